// lindblad.hpp — thermal-dissipator master equation: RK4 integrator, observables, steady state
#pragma once

#include <oscar/effective.hpp>
#include <oscar/fock.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <vector>

namespace oscar::lindblad {

struct DensityMatrix {
  Matrix rho;
  double tbar = 0.0;

  double trace() const { return rho.trace().real(); }
  double purity() const { return rho.squaredNorm(); }  // tr ρ² for Hermitian ρ
  double hermiticity_gap() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
};

inline DensityMatrix make_state(const FockBasis& basis, Matrix rho, double tbar = 0.0) {
  basis.validate();
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw ConfigError("state: matrix dimension does not match the basis");
  return {std::move(rho), tbar};
}

namespace detail_sim {

// Per-mode indexing data for the structured dissipator application.
struct ModeIndex {
  std::vector<int> level;    // Fock level of the mode at each flat index
  int stride = 1;            // flat-index shift that raises this mode by one
  int top = 1;               // highest retained level
};

inline ModeIndex mode_index(const FockBasis& basis, bool is_c) {
  ModeIndex m;
  const int d = basis.dim();
  m.level.resize(d);
  for (int i = 0; i < d; ++i) m.level[i] = is_c ? basis.level_c(i) : basis.level_r(i);
  m.stride = is_c ? basis.dim_r : 1;
  m.top = (is_c ? basis.dim_c : basis.dim_r) - 1;
  return m;
}

}  // namespace detail_sim

// Precomputed structure for one thermal channel on one mode. Applying the
// dissipator through the ladder structure costs O(D²) instead of dense
// products; the result is identical to the literal matrix expression
//   γ̄n̄·Y†ρY + γ̄(n̄+1)·YρY† − {γ̄((n̄+1)/2)Y†Y + γ̄(n̄/2)YY†, ρ}
// built from the truncated matrices (tested against it).
struct ChannelCache {
  double rate = 0.0;
  double nbar = 0.0;
  detail_sim::ModeIndex idx;
  std::vector<double> k_diag;  // diagonal of γ̄((n̄+1)/2)Y†Y + γ̄(n̄/2)YY†

  ChannelCache(const FockBasis& basis, const LindbladChannel& ch) {
    rate = ch.rate;
    nbar = ch.occupation;
    const bool is_c = ch.mode == algebra::mode_c();
    if (!is_c && !(ch.mode == algebra::mode_r()))
      throw ConfigError("channel: unknown mode label " + ch.mode.label);
    idx = detail_sim::mode_index(basis, is_c);
    k_diag.resize(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
      const int n = idx.level[i];
      const double yy_dag = n < idx.top ? n + 1.0 : 0.0;  // truncated YY† diagonal
      k_diag[i] = rate * (0.5 * (nbar + 1.0) * n + 0.5 * nbar * yy_dag);
    }
  }
};

// Accumulate −Γ̂ρ for one channel into `out`.
inline void add_dissipator(const ChannelCache& ch, const Matrix& rho, Matrix& out) {
  if (ch.rate == 0.0) return;
  const int d = static_cast<int>(rho.rows());
  const auto& lev = ch.idx.level;
  const int s = ch.idx.stride;
  const double gain_up = ch.rate * ch.nbar;          // Y†ρY weight
  const double gain_down = ch.rate * (ch.nbar + 1);  // YρY† weight
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex v = -(ch.k_diag[i] + ch.k_diag[j]) * rho(i, j);
      if (gain_up != 0.0 && lev[i] >= 1 && lev[j] >= 1)
        v += gain_up * std::sqrt(double(lev[i]) * lev[j]) * rho(i - s, j - s);
      if (lev[i] < ch.idx.top && lev[j] < ch.idx.top)
        v += gain_down * std::sqrt(double(lev[i] + 1) * (lev[j] + 1)) * rho(i + s, j + s);
      out(i, j) += v;
    }
  }
}

// −Γ̂ρ for a single channel, as a standalone matrix.
inline Matrix dissipator_apply(const DensityMatrix& state, const LindbladChannel& ch,
                               const ModeMatrices& ops) {
  Matrix out = Matrix::Zero(state.rho.rows(), state.rho.cols());
  add_dissipator(ChannelCache(ops.basis, ch), state.rho, out);
  return out;
}

struct SimOptions {
  double detuning_c = 0.0;  // optional residual-shift commutator, off by default
  double detuning_r = 0.0;
  double renorm_threshold = 1e-12;  // renormalize trace when per-step drift exceeds this
  double reject_threshold = 1e-8;   // throw StepRejected beyond this per-step drift
  double truncation_warn = 1e-8;    // flag when top-two-level population exceeds this
  bool track_mutual_information = false;
};

struct SimAudit {
  double max_step_trace_drift = 0.0;
  double accumulated_trace_drift = 0.0;  // |Σ pre-renormalization drifts|
  long renormalizations = 0;
  double max_hermiticity_gap = 0.0;
  double max_top_population = 0.0;
  bool truncation_warning = false;
  double max_mutual_information = 0.0;  // only filled when tracked
};

struct TimeSeries {
  std::vector<double> tbar;
  std::vector<double> n_c;
  std::vector<double> n_r;
  std::vector<double> trace;
  std::vector<double> purity;
  DensityMatrix final_state;
  SimAudit audit;
};

inline double mode_occupation(const Matrix& rho, const FockBasis& basis, bool is_c) {
  double out = 0.0;
  for (int i = 0; i < basis.dim(); ++i)
    out += (is_c ? basis.level_c(i) : basis.level_r(i)) * rho(i, i).real();
  return out;
}
inline double occupation_c(const DensityMatrix& st, const FockBasis& b) {
  return mode_occupation(st.rho, b, true);
}
inline double occupation_r(const DensityMatrix& st, const FockBasis& b) {
  return mode_occupation(st.rho, b, false);
}
// ⟨c†c · r†r⟩, for factorization checks.
inline double cross_occupation(const DensityMatrix& st, const FockBasis& b) {
  double out = 0.0;
  for (int i = 0; i < b.dim(); ++i)
    out += double(b.level_c(i)) * b.level_r(i) * st.rho(i, i).real();
  return out;
}

inline Matrix reduced_c(const Matrix& rho, const FockBasis& b) {
  Matrix out = Matrix::Zero(b.dim_c, b.dim_c);
  for (int m = 0; m < b.dim_c; ++m)
    for (int n = 0; n < b.dim_c; ++n)
      for (int k = 0; k < b.dim_r; ++k) out(m, n) += rho(b.flat(m, k), b.flat(n, k));
  return out;
}
inline Matrix reduced_r(const Matrix& rho, const FockBasis& b) {
  Matrix out = Matrix::Zero(b.dim_r, b.dim_r);
  for (int m = 0; m < b.dim_r; ++m)
    for (int n = 0; n < b.dim_r; ++n)
      for (int k = 0; k < b.dim_c; ++k) out(m, n) += rho(b.flat(k, m), b.flat(k, n));
  return out;
}

inline double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

inline double mutual_information(const DensityMatrix& st, const FockBasis& b) {
  return von_neumann_entropy(reduced_c(st.rho, b)) + von_neumann_entropy(reduced_r(st.rho, b)) -
         von_neumann_entropy(st.rho);
}

namespace detail_sim {

struct Generator {
  std::vector<ChannelCache> channels;
  Eigen::VectorXd detuning_diag;  // ω-shift commutator diagonal; empty when off

  Generator(const FockBasis& basis, const std::vector<LindbladChannel>& chs,
            const SimOptions& opt) {
    channels.reserve(chs.size());
    for (const auto& ch : chs) channels.emplace_back(basis, ch);
    if (opt.detuning_c != 0.0 || opt.detuning_r != 0.0) {
      detuning_diag.resize(basis.dim());
      for (int i = 0; i < basis.dim(); ++i)
        detuning_diag(i) = opt.detuning_c * basis.level_c(i) + opt.detuning_r * basis.level_r(i);
    }
  }

  Matrix operator()(const Matrix& rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& ch : channels) add_dissipator(ch, rho, out);
    if (detuning_diag.size() > 0) {
      const Complex mi(0.0, -1.0);
      for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
          out(i, j) += mi * (detuning_diag(i) - detuning_diag(j)) * rho(i, j);
    }
    return out;
  }
};

inline double top_two_population(const Matrix& rho, const FockBasis& b) {
  double p = 0.0;
  for (int i = 0; i < b.dim(); ++i) {
    const int nc = b.level_c(i), nr = b.level_r(i);
    if (nc >= b.dim_c - 2 || nr >= b.dim_r - 2) p += rho(i, i).real();
  }
  return p;
}

}  // namespace detail_sim

// One classical RK4 step of dρ/dt̄ = Σ(−Γ̂_iρ); re-Hermitized, trace-guarded.
inline DensityMatrix step(const DensityMatrix& state, const detail_sim::Generator& gen,
                          double dt, const SimOptions& opt, SimAudit* audit = nullptr) {
  if (!(dt > 0.0)) throw ConfigError("step: dt must be positive");
  const Matrix& rho = state.rho;
  const Matrix k1 = gen(rho);
  const Matrix k2 = gen(rho + (0.5 * dt) * k1);
  const Matrix k3 = gen(rho + (0.5 * dt) * k2);
  const Matrix k4 = gen(rho + dt * k3);
  Matrix next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next = 0.5 * (next + next.adjoint().eval());

  const double tr = next.trace().real();
  const double drift = std::abs(tr - 1.0);
  if (drift > opt.reject_threshold)
    throw StepRejected("step: trace drift " + std::to_string(drift) +
                       " exceeds budget; reduce dt or enlarge the basis");
  if (audit) {
    audit->max_step_trace_drift = std::max(audit->max_step_trace_drift, drift);
    audit->accumulated_trace_drift += tr - 1.0;
  }
  if (drift > opt.renorm_threshold) {
    next /= tr;
    if (audit) ++audit->renormalizations;
  }
  return {std::move(next), state.tbar + dt};
}

inline DensityMatrix step(const DensityMatrix& state, const std::vector<LindbladChannel>& chs,
                          const FockBasis& basis, double dt, const SimOptions& opt = {}) {
  return step(state, detail_sim::Generator(basis, chs, opt), dt, opt);
}

// Integrate to T̄ with fixed dt, sampling every `sample_every` steps.
inline TimeSeries evolve(const DensityMatrix& rho0, const std::vector<LindbladChannel>& chs,
                         const FockBasis& basis, double tbar_end, double dt,
                         int sample_every = 1, const SimOptions& opt = {}) {
  basis.validate();
  if (rho0.rho.rows() != basis.dim()) throw ConfigError("evolve: state does not match basis");
  if (!(dt > 0.0)) throw ConfigError("evolve: dt must be positive");
  if (sample_every < 1) throw ConfigError("evolve: sample_every must be >= 1");
  const detail_sim::Generator gen(basis, chs, opt);

  TimeSeries ts;
  DensityMatrix cur = rho0;
  const long nsteps = tbar_end > 0.0 ? std::lround(std::ceil(tbar_end / dt - 1e-12)) : 0;

  auto sample = [&](const DensityMatrix& st) {
    ts.tbar.push_back(st.tbar);
    ts.n_c.push_back(occupation_c(st, basis));
    ts.n_r.push_back(occupation_r(st, basis));
    ts.trace.push_back(st.trace());
    ts.purity.push_back(st.purity());
    ts.audit.max_hermiticity_gap =
        std::max(ts.audit.max_hermiticity_gap, st.hermiticity_gap());
    const double top = detail_sim::top_two_population(st.rho, basis);
    ts.audit.max_top_population = std::max(ts.audit.max_top_population, top);
    if (top > opt.truncation_warn) ts.audit.truncation_warning = true;
    if (opt.track_mutual_information)
      ts.audit.max_mutual_information =
          std::max(ts.audit.max_mutual_information, mutual_information(st, basis));
  };

  sample(cur);
  for (long k = 1; k <= nsteps; ++k) {
    cur = step(cur, gen, dt, opt, &ts.audit);
    if (k % sample_every == 0 || k == nsteps) sample(cur);
  }
  ts.final_state = std::move(cur);
  return ts;
}

// Long-time integration until ‖dρ/dt̄‖_max < tol.
inline DensityMatrix steady_state(const DensityMatrix& rho0,
                                  const std::vector<LindbladChannel>& chs,
                                  const FockBasis& basis, double tol, double dt,
                                  long max_steps = 2000000, const SimOptions& opt = {}) {
  basis.validate();
  const detail_sim::Generator gen(basis, chs, opt);
  DensityMatrix cur = rho0;
  const long check_every = 25;
  for (long k = 0; k < max_steps; ++k) {
    if (k % check_every == 0 && gen(cur.rho).cwiseAbs().maxCoeff() < tol) return cur;
    cur = step(cur, gen, dt, opt);
  }
  if (gen(cur.rho).cwiseAbs().maxCoeff() < tol) return cur;
  throw NoConvergence("steady_state: derivative norm still above tolerance after " +
                      std::to_string(max_steps) + " steps");
}

}  // namespace oscar::lindblad
