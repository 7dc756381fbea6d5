#include "mixedform/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mixedform/eigen.hpp"
#include "mixedform/errors.hpp"

namespace mixedform {
namespace {

constexpr double kFormTolerance = 1e-10;
constexpr double kPairingTolerance = 1e-12;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

bool same_angle(double a, double b) {
  return std::abs(a - b) <= kPairingTolerance * std::max(1.0, std::max(a, b));
}

void require_support(const QuotientFan& fan, const Vector& h, const char* who) {
  if (h.size() != fan.face_count())
    throw InvalidInput(std::string(who) + ": support vector has wrong length");
  if (!h.allFinite()) throw InvalidInput(std::string(who) + ": non-finite support vector");
}

double max_abs(const Matrix& m) { return std::max(m.cwiseAbs().maxCoeff(), 1e-300); }

std::vector<Matrix> face_area_pullbacks(const QuotientFan& fan) {
  std::vector<Matrix> out;
  for (int i = 0; i < fan.face_count(); ++i) {
    const Matrix s = lorentz_support_matrix(fan, i);
    out.push_back(s.transpose() * area_form(fan.face_fan(i)).entries() * s);
  }
  return out;
}

}  // namespace

QuotientFan QuotientFan::build(int genus, std::vector<std::vector<Adjacency>> faces,
                               std::optional<int> vertices) {
  if (genus < 2) throw InvalidInput("QuotientFan: genus must be at least 2");
  const int m = static_cast<int>(faces.size());
  if (m < 1) throw InvalidInput("QuotientFan: no face classes");

  std::map<std::pair<int, int>, std::vector<double>> directed;
  int degree_sum = 0;
  QuotientFan fan;
  for (int i = 0; i < m; ++i) {
    std::vector<double> omegas;
    for (const Adjacency& a : faces[sz(i)]) {
      if (a.to < 0 || a.to >= m)
        throw InvalidInput("QuotientFan: face " + std::to_string(i) + " refers to unknown class " +
                           std::to_string(a.to));
      if (!std::isfinite(a.phi) || !(a.phi > 0))
        throw InvalidInput("QuotientFan: face " + std::to_string(i) + " has phi <= 0");
      directed[{i, a.to}].push_back(a.phi);
      omegas.push_back(a.omega);
    }
    degree_sum += static_cast<int>(omegas.size());
    fan.fans_.push_back(NormalFan2D::from_turning_angles(omegas));
  }

  for (auto& [key, phis] : directed) std::sort(phis.begin(), phis.end());
  for (const auto& [key, phis] : directed) {
    const auto [i, j] = key;
    const std::string where = std::to_string(i) + " -> " + std::to_string(j);
    if (i == j) {
      if (phis.size() % 2 != 0)
        throw StructuralError("QuotientFan: unpaired self-adjacency " + where);
      for (std::size_t a = 0; a < phis.size(); a += 2)
        if (!same_angle(phis[a], phis[a + 1]))
          throw StructuralError("QuotientFan: unpaired self-adjacency angle " + where);
      continue;
    }
    const auto back = directed.find({j, i});
    if (back == directed.end() || back->second.size() != phis.size())
      throw StructuralError("QuotientFan: adjacency " + where + " has no matching reverse entry");
    for (std::size_t a = 0; a < phis.size(); ++a)
      if (!same_angle(phis[a], back->second[a]))
        throw StructuralError("QuotientFan: phi differs across adjacency " + where);
  }

  const int edges = degree_sum / 2;
  const int derived = 2 - 2 * genus - m + edges;
  if (vertices && *vertices != derived)
    throw StructuralError("QuotientFan: vertex count " + std::to_string(*vertices) +
                          " violates n - E + m = 2 - 2g (expected " + std::to_string(derived) +
                          ")");
  if (derived < 1 || 3 * derived > 2 * edges)
    throw StructuralError("QuotientFan: Euler bookkeeping gives " + std::to_string(derived) +
                          " vertices for " + std::to_string(edges) + " edges");

  fan.genus_ = genus;
  fan.edge_count_ = edges;
  fan.vertex_count_ = derived;
  fan.faces_ = std::move(faces);
  return fan;
}

Matrix lorentz_support_matrix(const QuotientFan& fan, int face) {
  const auto& adj = fan.adjacencies(face);
  Matrix s = Matrix::Zero(static_cast<Eigen::Index>(adj.size()), fan.face_count());
  for (std::size_t k = 0; k < adj.size(); ++k) {
    const double sh = std::sinh(adj[k].phi);
    const double ch = std::cosh(adj[k].phi);
    const auto row = static_cast<Eigen::Index>(k);
    s(row, adj[k].to) -= 1 / sh;
    s(row, face) += ch / sh;
  }
  return s;
}

Vector face_support_numbers_lorentz(const QuotientFan& fan, const Vector& h, int face) {
  require_support(fan, h, "face_support_numbers_lorentz");
  return lorentz_support_matrix(fan, face) * h;
}

Vector face_edge_lengths(const QuotientFan& fan, const Vector& h, int face) {
  return edge_lengths(fan.face_fan(face), face_support_numbers_lorentz(fan, h, face));
}

Matrix edge_length_operator(const QuotientFan& fan) {
  std::vector<Matrix> blocks;
  Eigen::Index rows = 0;
  for (int i = 0; i < fan.face_count(); ++i) {
    blocks.push_back(edge_length_matrix(fan.face_fan(i)) * lorentz_support_matrix(fan, i));
    rows += blocks.back().rows();
  }
  Matrix out(rows, fan.face_count());
  Eigen::Index r = 0;
  for (const Matrix& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

Matrix face_edge_half_lengths(const QuotientFan& fan, const Vector& h, int face) {
  const NormalFan2D& f = fan.face_fan(face);
  const Vector s = face_support_numbers_lorentz(fan, h, face);
  const int n = f.size();
  Matrix out(n, 2);
  for (int j = 0; j < n; ++j) {
    const double before = f.turning_angle(j - 1);
    const double after = f.turning_angle(j);
    out(j, 0) = (s((j + n - 1) % n) - s(j) * std::cos(before)) / std::sin(before);
    out(j, 1) = (s((j + 1) % n) - s(j) * std::cos(after)) / std::sin(after);
  }
  return out;
}

bool in_open_cone(const QuotientFan& fan, const Vector& h) {
  require_support(fan, h, "in_open_cone");
  const double tol = 1e-12 * h.norm();
  for (int i = 0; i < fan.face_count(); ++i)
    if (face_edge_lengths(fan, h, i).minCoeff() <= tol) return false;
  return true;
}

bool in_closed_cone(const QuotientFan& fan, const Vector& h) {
  require_support(fan, h, "in_closed_cone");
  const double tol = 1e-12 * h.norm();
  for (int i = 0; i < fan.face_count(); ++i)
    if (face_edge_lengths(fan, h, i).minCoeff() < -tol) return false;
  return true;
}

TrilinearForm covolume_form(const QuotientFan& fan) {
  const int m = fan.face_count();
  const auto pullbacks = face_area_pullbacks(fan);
  std::vector<double> t(sz(m) * sz(m) * sz(m));
  for (int i = 0; i < m; ++i)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) t[sz((i * m + b) * m + c)] = pullbacks[sz(i)](b, c) / 3;
  return TrilinearForm(m, std::move(t), kFormTolerance);
}

double covolume(const QuotientFan& fan, const Vector& h) {
  require_support(fan, h, "covolume");
  double v = 0;
  for (int i = 0; i < fan.face_count(); ++i)
    v += h(i) * area_form(fan.face_fan(i))(face_support_numbers_lorentz(fan, h, i));
  return v / 3;
}

HessianReport covolume_hessian(const QuotientFan& fan, const Vector& h) {
  require_support(fan, h, "covolume_hessian");
  if (!in_open_cone(fan, h)) throw DomainError("covolume_hessian: h must lie in the open cone");
  const int m = fan.face_count();
  Matrix hess = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const Vector l = face_edge_lengths(fan, h, i);
    const auto& adj = fan.adjacencies(i);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const double sh = std::sinh(adj[k].phi);
      const double ch = std::cosh(adj[k].phi);
      const double lk = l(static_cast<Eigen::Index>(k));
      if (adj[k].to == i) {
        hess(i, i) += lk * (ch - 1) / sh;
      } else {
        hess(i, i) += lk * ch / sh;
        hess(i, adj[k].to) -= lk / sh;
      }
    }
  }

  HessianReport r;
  const double scale = max_abs(hess);
  r.symmetry_defect = (hess - hess.transpose()).cwiseAbs().maxCoeff() / scale;
  if (r.symmetry_defect > kFormTolerance)
    throw ConsistencyError("covolume_hessian: face-area Jacobian is not symmetric");
  const Matrix via_tensor = 6 * covolume_form(fan).contract(h);
  r.cross_check_defect = (hess - via_tensor).cwiseAbs().maxCoeff() / scale;
  if (r.cross_check_defect > kFormTolerance)
    throw ConsistencyError("covolume_hessian: Jacobian differs from 6 covol(., ., h)");

  r.hessian = SymmetricForm(hess, kFormTolerance);
  r.dominance_margin = std::numeric_limits<double>::infinity();
  r.min_diagonal = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const double off = hess.row(i).cwiseAbs().sum() - std::abs(hess(i, i));
    r.dominance_margin = std::min(r.dominance_margin, hess(i, i) - off);
    r.min_diagonal = std::min(r.min_diagonal, hess(i, i));
  }
  r.min_eigenvalue = eigenvalues(r.hessian)(0);
  return r;
}

SymmetricForm fuchsian_area_form(const QuotientFan& fan) {
  const int m = fan.face_count();
  Matrix area = Matrix::Zero(m, m);
  for (const Matrix& a : face_area_pullbacks(fan)) area += a;
  const Matrix via_tensor = 3 * covolume_form(fan).contract(Vector::Ones(m));
  if ((area - via_tensor).cwiseAbs().maxCoeff() > kFormTolerance * max_abs(area))
    throw ConsistencyError("fuchsian_area_form: area differs from 3 covol(1, ., .)");
  return SymmetricForm(area, kFormTolerance);
}

DefinitenessReport check_positive_definite(const QuotientFan& fan) {
  DefinitenessReport r;
  r.form = fuchsian_area_form(fan);
  const SymmetricEigen eig = jacobi_eigen(r.form.entries(), true);
  r.eigenvalues = eig.values;
  r.min_eigenvalue = eig.values(0);
  const double radius = eig.values.cwiseAbs().maxCoeff();
  r.positive_definite = r.min_eigenvalue > 1e-12 * radius;
  if (!r.positive_definite) r.counterexample = eig.vectors.col(0);
  return r;
}

double spherical_distance(const QuotientFan& fan, const Vector& h, const Vector& k) {
  require_support(fan, h, "spherical_distance");
  require_support(fan, k, "spherical_distance");
  if (!in_open_cone(fan, h) || !in_open_cone(fan, k))
    throw DomainError("spherical_distance: support vectors must lie in the open cone");
  const SymmetricForm area = fuchsian_area_form(fan);
  const double qh = area(h);
  const double qk = area(k);
  if (!(qh > 0 && qk > 0))
    throw Inconsistency("spherical_distance: area is not positive on the cone");
  const double c = area(h, k) / std::sqrt(qh * qk);
  if (c > 1 + 1e-12)
    throw Inconsistency("spherical_distance: normalized pairing exceeds 1 (Cauchy-Schwarz violated)");
  // Angle between the unit vectors, stable near 0 unlike arccos.
  const Vector u = h / std::sqrt(qh);
  const Vector w = k / std::sqrt(qk);
  return 2 * std::atan2(std::sqrt(std::max(area(u - w), 0.0)),
                        std::sqrt(std::max(area(u + w), 0.0)));
}

ReversedCauchySchwarzReport reversed_cauchy_schwarz_check(const SymmetricForm& area,
                                                          const Vector& h, const Vector& k,
                                                          double inequality_tolerance) {
  if (h.size() != area.dim() || k.size() != area.dim())
    throw InvalidInput("reversed_cauchy_schwarz_check: dimension mismatch");
  const double qh = area(h);
  const double qk = area(k);
  if (!(qh > 0)) throw DomainError("reversed_cauchy_schwarz_check: q(h) must be positive");
  const double b = area(h, k);
  ReversedCauchySchwarzReport r;
  r.residual = qh * qk - b * b;
  r.scale = std::max(b * b, std::abs(qh * qk));
  r.inequality_holds = r.residual >= -inequality_tolerance * r.scale;
  r.lambda = b / qh;
  const double kn = k.norm();
  r.homothety_defect = kn > 0 ? (k - r.lambda * h).norm() / kn : 0;
  r.homothetic = r.homothety_defect <= 1e-7;
  return r;
}

}  // namespace mixedform
