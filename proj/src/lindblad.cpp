#include "nqt/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "nqt/errors.hpp"

namespace nqt {

const ComplexMatrix& axis_matrix(Axis axis) {
  static const ComplexMatrix sx = pauli::x();
  static const ComplexMatrix sy = pauli::y();
  static const ComplexMatrix sz = pauli::z();
  switch (axis) {
    case Axis::X: return sx;
    case Axis::Y: return sy;
    case Axis::Z: return sz;
  }
  throw ContractViolation("unknown axis");
}

char axis_name(Axis axis) {
  switch (axis) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

std::string noise_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::AxisX: return "x";
    case NoiseKind::AxisY: return "y";
    case NoiseKind::AxisZ: return "z";
    case NoiseKind::Isotropic: return "iso";
  }
  return "?";
}

std::optional<NoiseKind> parse_noise(std::string_view text) {
  if (text == "x") return NoiseKind::AxisX;
  if (text == "y") return NoiseKind::AxisY;
  if (text == "z") return NoiseKind::AxisZ;
  if (text == "iso" || text == "isotropic") return NoiseKind::Isotropic;
  return std::nullopt;
}

NoiseSpec::NoiseSpec(std::vector<LindbladTerm> terms)
    : terms_(std::move(terms)) {
  std::set<std::pair<int, Axis>> seen;
  for (const auto& t : terms_) {
    require(t.kappa >= 0.0 && std::isfinite(t.kappa),
            "Lindblad rate must be finite and nonnegative");
    require(t.qubit >= 1, "Lindblad term qubit must be >= 1");
    require(seen.emplace(t.qubit, t.axis).second,
            "duplicate (qubit, axis) Lindblad term");
  }
}

NoiseSpec NoiseSpec::from_kind(NoiseKind kind, double kappa, int n_qubits) {
  std::vector<LindbladTerm> terms;
  for (int q = 1; q <= n_qubits; ++q) {
    switch (kind) {
      case NoiseKind::AxisX: terms.push_back({q, Axis::X, kappa}); break;
      case NoiseKind::AxisY: terms.push_back({q, Axis::Y, kappa}); break;
      case NoiseKind::AxisZ: terms.push_back({q, Axis::Z, kappa}); break;
      case NoiseKind::Isotropic:
        for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
          terms.push_back({q, a, kappa});
        }
        break;
    }
  }
  return NoiseSpec(std::move(terms));
}

NoiseSpec NoiseSpec::from_axes(const std::vector<Axis>& axes, double kappa) {
  std::vector<LindbladTerm> terms;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    terms.push_back({static_cast<int>(i) + 1, axes[i], kappa});
  }
  return NoiseSpec(std::move(terms));
}

double NoiseSpec::kappa_max() const {
  double k = 0.0;
  for (const auto& t : terms_) k = std::max(k, t.kappa);
  return k;
}

namespace {

void require_in_register(const NoiseSpec& spec, int n_qubits) {
  for (const auto& t : spec.terms()) {
    require(t.qubit <= n_qubits,
            "Lindblad term on qubit " + std::to_string(t.qubit) +
                " outside a " + std::to_string(n_qubits) + "-qubit register");
  }
}

ComplexMatrix jump_operator(const LindbladTerm& term, int n_qubits) {
  return std::sqrt(term.kappa) *
         embed(axis_matrix(term.axis), QubitIndex(term.qubit, n_qubits),
               n_qubits);
}

}  // namespace

ComplexMatrix liouvillian(const NoiseSpec& spec, int n_qubits) {
  require(n_qubits >= 1, "liouvillian: need at least one qubit");
  require_in_register(spec, n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const ComplexMatrix ident = ComplexMatrix::Identity(d, d);
  ComplexMatrix sup = ComplexMatrix::Zero(d * d, d * d);
  // Column stacking: vec(A X B) = (B^T kron A) vec(X).
  for (const auto& term : spec.terms()) {
    const ComplexMatrix l = jump_operator(term, n_qubits);
    const ComplexMatrix ldl = l.adjoint() * l;
    sup += kron(l.conjugate(), l);
    sup -= 0.5 * kron(ident, ldl);
    sup -= 0.5 * kron(ldl.transpose(), ident);
  }
  return sup;
}

ComplexMatrix dissipator(const ComplexMatrix& rho, const NoiseSpec& spec) {
  const int n = qubits_for_dim(rho.rows());
  require_in_register(spec, n);
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& term : spec.terms()) {
    const ComplexMatrix l = jump_operator(term, n);
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

DensityMatrix evolve_expm(const DensityMatrix& rho0, const NoiseSpec& spec,
                          double t) {
  require(t >= 0.0 && std::isfinite(t), "evolve_expm: t must be >= 0");
  if (t == 0.0 || spec.empty()) return rho0;
  const Eigen::Index d = rho0.dim();
  const ComplexMatrix prop = expm(liouvillian(spec, rho0.n_qubits()) * t);
  const ComplexVector vec = Eigen::Map<const ComplexVector>(
      rho0.matrix().data(), d * d);
  ComplexVector out = prop * vec;
  ComplexMatrix m = Eigen::Map<ComplexMatrix>(out.data(), d, d);
  return DensityMatrix(std::move(m));
}

int default_rk4_steps(const NoiseSpec& spec, double t) {
  return std::max(1000, static_cast<int>(std::ceil(100.0 * spec.kappa_max() * t)));
}

DensityMatrix evolve_rk4(const DensityMatrix& rho0, const NoiseSpec& spec,
                         double t, std::optional<int> steps) {
  require(t >= 0.0 && std::isfinite(t), "evolve_rk4: t must be >= 0");
  const int n_steps = steps.value_or(default_rk4_steps(spec, t));
  require(n_steps >= 1, "evolve_rk4: steps must be >= 1");
  if (t == 0.0) return rho0;
  const double h = t / n_steps;
  ComplexMatrix y = rho0.matrix();
  for (int i = 0; i < n_steps; ++i) {
    const ComplexMatrix k1 = dissipator(y, spec);
    const ComplexMatrix k2 = dissipator(y + 0.5 * h * k1, spec);
    const ComplexMatrix k3 = dissipator(y + 0.5 * h * k2, spec);
    const ComplexMatrix k4 = dissipator(y + h * k3, spec);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix(std::move(y));
}

namespace {

ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows,
                          double scale) {
  ComplexMatrix m(8, 8);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v * scale;
    ++r;
  }
  return m;
}

ComplexMatrix ghz_closed(NoiseKind noise, double kt) {
  const double e2 = std::exp(-2 * kt), e4 = std::exp(-4 * kt),
               e6 = std::exp(-6 * kt), e8 = std::exp(-8 * kt),
               e12 = std::exp(-12 * kt);
  switch (noise) {
    case NoiseKind::AxisZ: {
      ComplexMatrix m = ComplexMatrix::Zero(8, 8);
      m(0, 0) = m(7, 7) = 0.5;
      m(0, 7) = m(7, 0) = 0.5 * e6;
      return m;
    }
    case NoiseKind::AxisX: {
      const double ap = 1 + 3 * e4, am = 1 - e4;
      return real_matrix({{ap, 0, 0, 0, 0, 0, 0, ap},
                          {0, am, 0, 0, 0, 0, am, 0},
                          {0, 0, am, 0, 0, am, 0, 0},
                          {0, 0, 0, am, am, 0, 0, 0},
                          {0, 0, 0, am, am, 0, 0, 0},
                          {0, 0, am, 0, 0, am, 0, 0},
                          {0, am, 0, 0, 0, 0, am, 0},
                          {ap, 0, 0, 0, 0, 0, 0, ap}},
                         1.0 / 8);
    }
    case NoiseKind::AxisY: {
      const double ap = 1 + 3 * e4, am = 1 - e4;
      const double b1 = 3 * e2 + e6, b2 = e2 - e6;
      return real_matrix({{ap, 0, 0, 0, 0, 0, 0, b1},
                          {0, am, 0, 0, 0, 0, -b2, 0},
                          {0, 0, am, 0, 0, -b2, 0, 0},
                          {0, 0, 0, am, -b2, 0, 0, 0},
                          {0, 0, 0, -b2, am, 0, 0, 0},
                          {0, 0, -b2, 0, 0, am, 0, 0},
                          {0, -b2, 0, 0, 0, 0, am, 0},
                          {b1, 0, 0, 0, 0, 0, 0, ap}},
                         1.0 / 8);
    }
    case NoiseKind::Isotropic: {
      const double tp = 1 + 3 * e8, tm = 1 - e8, g = 4 * e12;
      return real_matrix({{tp, 0, 0, 0, 0, 0, 0, g},
                          {0, tm, 0, 0, 0, 0, 0, 0},
                          {0, 0, tm, 0, 0, 0, 0, 0},
                          {0, 0, 0, tm, 0, 0, 0, 0},
                          {0, 0, 0, 0, tm, 0, 0, 0},
                          {0, 0, 0, 0, 0, tm, 0, 0},
                          {0, 0, 0, 0, 0, 0, tm, 0},
                          {g, 0, 0, 0, 0, 0, 0, tp}},
                         1.0 / 8);
    }
  }
  throw ContractViolation("unknown noise kind");
}

ComplexMatrix w_closed(NoiseKind noise, double kt) {
  const double s = std::sqrt(2.0);
  const double e2 = std::exp(-2 * kt), e4 = std::exp(-4 * kt),
               e6 = std::exp(-6 * kt), e8 = std::exp(-8 * kt),
               e12 = std::exp(-12 * kt);
  switch (noise) {
    case NoiseKind::AxisZ: {
      const double f = e4;
      return real_matrix({{0, 0, 0, 0, 0, 0, 0, 0},
                          {0, 2, s * f, 0, s * f, 0, 0, 0},
                          {0, s * f, 1, 0, f, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0, 0},
                          {0, s * f, f, 0, 1, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0, 0}},
                         1.0 / 4);
    }
    case NoiseKind::AxisX: {
      const double a1 = 1 + e2 + e4 + e6, a2 = 1 + e2 - e4 - e6,
                   a3 = 1 - e2 - e4 + e6, a4 = 1 - e2 + e4 - e6;
      const double bp = 1 + e6, bm = 1 - e6;
      return real_matrix(
          {{2 * a2, 0, 0, s * a2, 0, s * a2, a2, 0},
           {0, 2 * a1, s * a1, 0, s * a1, 0, 0, a3},
           {0, s * a1, 2 * bp, 0, a1, 0, 0, s * a3},
           {s * a2, 0, 0, 2 * bm, 0, a4, s * a4, 0},
           {0, s * a1, a1, 0, 2 * bp, 0, 0, s * a3},
           {s * a2, 0, 0, a4, 0, 2 * bm, s * a4, 0},
           {a2, 0, 0, s * a4, 0, s * a4, 2 * a4, 0},
           {0, a3, s * a3, 0, s * a3, 0, 0, 2 * a3}},
          1.0 / 16);
    }
    case NoiseKind::AxisY: {
      const double a1 = 1 + e2 + e4 + e6, a2 = 1 + e2 - e4 - e6,
                   a3 = 1 - e2 - e4 + e6, a4 = 1 - e2 + e4 - e6;
      const double bp = 1 + e6, bm = 1 - e6;
      return real_matrix(
          {{2 * a2, 0, 0, -s * a2, 0, -s * a2, -a2, 0},
           {0, 2 * a1, s * a1, 0, s * a1, 0, 0, -a3},
           {0, s * a1, 2 * bp, 0, a1, 0, 0, -s * a3},
           {-s * a2, 0, 0, 2 * bm, 0, a4, s * a4, 0},
           {0, s * a1, a1, 0, 2 * bp, 0, 0, -s * a3},
           {-s * a2, 0, 0, a4, 0, 2 * bm, s * a4, 0},
           {-a2, 0, 0, s * a4, 0, s * a4, 2 * a4, 0},
           {0, -a3, -s * a3, 0, -s * a3, 0, 0, 2 * a3}},
          1.0 / 16);
    }
    case NoiseKind::Isotropic: {
      const double a1 = 1 + e4 + e8 + e12, a2 = 1 + e4 - e8 - e12,
                   a3 = 1 - e4 - e8 + e12, a4 = 1 - e4 + e8 - e12;
      const double bp = 1 + e12, bm = 1 - e12;
      const double gp = e8 + e12, gm = e8 - e12;
      return real_matrix({{a2, 0, 0, 0, 0, 0, 0, 0},
                          {0, a1, s * gp, 0, s * gp, 0, 0, 0},
                          {0, s * gp, bp, 0, gp, 0, 0, 0},
                          {0, 0, 0, bm, 0, gm, s * gm, 0},
                          {0, s * gp, gp, 0, bp, 0, 0, 0},
                          {0, 0, 0, gm, 0, bm, s * gm, 0},
                          {0, 0, 0, s * gm, 0, s * gm, a4, 0},
                          {0, 0, 0, 0, 0, 0, 0, a3}},
                         1.0 / 8);
    }
  }
  throw ContractViolation("unknown noise kind");
}

}  // namespace

DensityMatrix closed_channel(const ChannelKind& channel, NoiseKind noise,
                             double kt) {
  require(kt >= 0.0 && std::isfinite(kt), "closed_channel: kt must be >= 0");
  if (std::holds_alternative<channel::GhzStd>(channel)) {
    return DensityMatrix(ghz_closed(noise, kt));
  }
  if (std::holds_alternative<channel::WStd>(channel)) {
    return DensityMatrix(w_closed(noise, kt));
  }
  throw ContractViolation("closed_channel: no closed form for channel '" +
                          channel_name(channel) + "'");
}

ComplexMatrix x_to_y_rotation() {
  return (pauli::x() + pauli::y()) / std::sqrt(2.0);
}

}  // namespace nqt
