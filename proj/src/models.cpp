#include "psp/models.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "psp/consistency.hpp"
#include "psp/depgraph.hpp"
#include "psp/format.hpp"

namespace psp {

Psp gen_hn(int n) {
  if (n < 2) throw std::invalid_argument("gen_hn: n must be >= 2");
  Psp f;
  for (int i = 1; i <= n; ++i) f.names.push_back("X" + std::to_string(i));
  f.polys.push_back(Polynomial::make(
      {Monomial(rat(1, 2), {{0, 2}}), Monomial(rat(1, 10), {{n - 1, 2}}), Monomial(rat(2, 5), {})}));
  for (int i = 1; i < n; ++i)
    f.polys.push_back(Polynomial::make(
        {Monomial(rat(1, 100), {{i - 1, 2}}), Monomial(rat(1, 2), {{i, 1}}), Monomial(rat(49, 100), {})}));
  return f;
}

RationalVec hn_witness(int n) {
  RationalVec p;
  Rational step = rat(1, 50);  // 0.02
  Rational power = 1;
  for (int k = 0; k < n; ++k) power *= step;  // 0.02^n
  for (int i = 0; i < n; ++i) {
    p.push_back(1 - power);
    power *= step;
  }
  return p;
}

SurrogateKernel::SurrogateKernel(Rational radius, int segments) : d_(std::move(radius)), segments_(segments) {
  if (d_ <= 0) throw std::invalid_argument("surrogate kernel: radius must be positive");
  if (segments_ < 1) throw std::invalid_argument("surrogate kernel: segments must be >= 1");
}

Rational SurrogateKernel::escape(const Rational& xi) const {
  // complement of the discretized collision mass; a small ball lets most
  // neutrons out, a large one swallows the whole unit of probability
  Rational mass = 0;
  Rational weight = d_ / segments_;
  for (int k = 0; k <= segments_; ++k) mass += weight * collision(xi, d_ * k / segments_);
  if (mass >= 1) return Rational(0);
  return 1 - mass;
}

Rational SurrogateKernel::collision(const Rational& xi, const Rational& eta) const {
  Rational diff = xi - eta;
  return 1 / (2 * (1 + diff * diff));
}

ToyCriticalKernel::ToyCriticalKernel(Rational radius, int segments) : d_(std::move(radius)), segments_(segments) {
  if (segments_ < 1) throw std::invalid_argument("toy kernel: segments must be >= 1");
  if (d_ <= 0 || d_ > rat(61, 50)) throw std::invalid_argument("toy kernel: radius must be in (0, 61/50]");
}

Rational ToyCriticalKernel::escape(const Rational&) const { return 1 - rat(50, 61) * d_; }

Rational ToyCriticalKernel::collision(const Rational&, const Rational&) const {
  return rat(50, 61) * Rational(segments_) / Rational(segments_ + 1);
}

TableKernel TableKernel::load(std::istream& in) {
  TableKernel k;
  std::string line;
  int mode = 0;  // 1: xi,l rows; 2: xi,eta,R rows
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    if (trimmed == "xi,l") {
      mode = 1;
      continue;
    }
    if (trimmed == "xi,eta,R") {
      mode = 2;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(trimmed);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (mode == 1 && cells.size() == 2) {
      k.l_[parse_rational(cells[0])] = parse_rational(cells[1]);
    } else if (mode == 2 && cells.size() == 3) {
      k.r_[{parse_rational(cells[0]), parse_rational(cells[1])}] = parse_rational(cells[2]);
    } else {
      throw std::runtime_error("kernel table line " + std::to_string(lineno) + ": expected a section header or " +
                               (mode == 1 ? "2" : "3") + " columns");
    }
  }
  if (k.l_.empty() || k.r_.empty()) throw std::runtime_error("kernel table: missing xi,l or xi,eta,R section");
  return k;
}

TableKernel TableKernel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel table '" + path + "'");
  return load(in);
}

Rational TableKernel::escape(const Rational& xi) const {
  auto it = l_.find(xi);
  if (it == l_.end()) throw std::runtime_error("kernel table: no l value at xi = " + rational_to_string(xi));
  return it->second;
}

Rational TableKernel::collision(const Rational& xi, const Rational& eta) const {
  auto it = r_.find({xi, eta});
  if (it == r_.end())
    throw std::runtime_error("kernel table: no R value at (" + rational_to_string(xi) + ", " +
                             rational_to_string(eta) + ")");
  return it->second;
}

NeutronModel gen_neutron(const Rational& radius, int segments, const NeutronKernel& kernel) {
  if (radius <= 0) throw std::invalid_argument("gen_neutron: radius must be positive");
  if (segments < 1) throw std::invalid_argument("gen_neutron: segments must be >= 1");
  int n = segments;
  Rational weight = radius / n;

  // collision generating function 0.025 + 0.830x + 0.07x^2 + 0.05x^3 + 0.025x^4
  const Rational gf[5] = {rat(1, 40), rat(83, 100), rat(7, 100), rat(1, 20), rat(1, 40)};

  std::vector<Rational> grid;
  for (int j = 0; j <= n; ++j) grid.push_back(radius * j / n);

  NeutronModel model;
  for (int j = 0; j <= n; ++j) model.psp.names.push_back("Q" + std::to_string(j));
  for (int j = 0; j <= n; ++j) {
    Rational lj = kernel.escape(grid[j]);
    if (lj < 0) throw std::runtime_error("kernel produced a negative escape probability");
    Rational constant = lj;
    std::vector<Monomial> variable_terms;
    Rational variable_sum = 0;
    for (int kk = 0; kk <= n; ++kk) {
      Rational rj = kernel.collision(grid[j], grid[kk]);
      if (rj < 0) throw std::runtime_error("kernel produced a negative collision density");
      Rational scale = weight * rj;
      if (scale == 0) continue;
      constant += scale * gf[0];
      for (int deg = 1; deg <= 4; ++deg) {
        if (gf[deg] == 0) continue;
        variable_terms.emplace_back(scale * gf[deg], std::vector<std::pair<int, int>>{{kk, deg}});
        variable_sum += scale * gf[deg];
      }
    }
    if (constant > 1)
      throw std::runtime_error("kernel row " + std::to_string(j) +
                               ": constant mass alone exceeds 1; the kernel is not a sub-probability");
    Rational total = constant + variable_sum;
    if (total > 1 && variable_sum > 0) {
      Rational factor = (1 - constant) / variable_sum;
      for (Monomial& m : variable_terms) m.coeff *= factor;
      model.clamped.emplace_back(j, factor);
    }
    std::vector<Monomial> ms = std::move(variable_terms);
    if (constant > 0) ms.emplace_back(constant, std::vector<std::pair<int, int>>{});
    model.psp.polys.push_back(Polynomial::make(std::move(ms)));
  }
  return model;
}

KernelFactory make_kernel_factory(const std::string& spec, int segments) {
  if (spec == "builtin" || spec == "surrogate")
    return [segments](const Rational& d) -> std::unique_ptr<NeutronKernel> {
      return std::make_unique<SurrogateKernel>(d, segments);
    };
  if (spec == "toy")
    return [segments](const Rational& d) -> std::unique_ptr<NeutronKernel> {
      return std::make_unique<ToyCriticalKernel>(d, segments);
    };
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    return [path](const Rational&) -> std::unique_ptr<NeutronKernel> {
      return std::make_unique<TableKernel>(TableKernel::load_file(path));
    };
  }
  throw std::invalid_argument("unknown kernel '" + spec + "' (expected builtin, surrogate, toy or file:PATH)");
}

namespace {

bool radius_consistent(int segments, const KernelFactory& kernel_at, const Rational& d) {
  std::unique_ptr<NeutronKernel> k = kernel_at(d);
  NeutronModel m = gen_neutron(d, segments, *k);
  ZeroRemoval zr = remove_zero_components(m.psp);
  if (!zr.removed.empty()) return false;  // extinct-with-probability-0 components
  return check_consistency(zr.psp).consistent;
}

}  // namespace

CriticalResult critical_radius(int segments, const KernelFactory& kernel_at, Rational lo, Rational hi,
                               const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("critical_radius: tol must be positive");
  if (!(lo < hi)) throw std::invalid_argument("critical_radius: need lo < hi");

  CriticalResult out;
  auto probe = [&](const Rational& d) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = radius_consistent(segments, kernel_at, d);
    auto t1 = std::chrono::steady_clock::now();
    out.steps.push_back({d, ok, std::chrono::duration<double, std::milli>(t1 - t0).count()});
    return ok;
  };

  if (!probe(lo)) throw std::invalid_argument("critical_radius: lo is not consistent");
  if (probe(hi)) throw std::invalid_argument("critical_radius: hi is not inconsistent");

  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (probe(mid))
      lo = mid;
    else
      hi = mid;
  }
  out.lo = lo;
  out.hi = hi;
  return out;
}

}  // namespace psp
