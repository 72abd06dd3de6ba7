#include "juliabury/ratmap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace jb {

static const Complex kOne(1.0), kZero(0.0);

static Polynomial linear(Complex root) {
  // z - root
  return Polynomial({-root, kOne});
}

RationalMap::RationalMap(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
  num.trim();
  den.trim();
  if (num.is_zero() || den.is_zero())
    throw Error("RationalMap: numerator or denominator identically zero");
  degree = std::max(num.degree(), den.degree());
  if (degree < 1) throw Error("RationalMap: degree must be >= 1");
  if (num.degree() >= 1 && den.degree() >= 1) {
    auto dr = roots_all(den, 1e-10);
    for (Complex r : dr) {
      // shared root within distance 1e-8 of a numerator root
      if (std::abs(num.eval(r)) < 1e-8) {
        for (Complex nr : roots_all(num, 1e-10)) {
          if (std::abs(nr - r) < 1e-8)
            throw Error("RationalMap: num and den share a root");
        }
      }
    }
  }
}

Complex RationalMap::eval_affine(Complex z) const { return num.eval(z) / den.eval(z); }

SpherePoint RationalMap::eval_dd_projective(const SpherePoint& pt) const {
  int n = std::max(num.degree(), den.degree());
  Complex pv, qv;
  if (std::abs(pt.w) >= std::abs(pt.z)) {
    DDComplex t(pt.z / pt.w);
    pv = eval_dd(num, t).to_complex();
    qv = eval_dd(den, t).to_complex();
  } else {
    DDComplex s(pt.w / pt.z);
    pv = eval_dd(num.reversed(n), s).to_complex();
    qv = eval_dd(den.reversed(n), s).to_complex();
  }
  if (std::abs(pv) < kCoeffTrimEps && std::abs(qv) < kCoeffTrimEps)
    throw IndeterminatePoint();
  return SpherePoint(pv, qv);
}

// Divide p by (z - root); the remainder is discarded (assumed ~0).
static Polynomial deflate(const Polynomial& p, Complex root) {
  std::vector<Complex> q(p.c.size() - 1);
  Complex carry = p.c.back();
  for (size_t i = p.c.size() - 1; i-- > 0;) {
    if (i < q.size()) q[i] = carry;
    carry = p.c[i] + carry * root;
  }
  return Polynomial(std::move(q));
}

RationalMap derivative(const RationalMap& f) {
  Polynomial w = f.num.derivative() * f.den - f.num * f.den.derivative();
  if (f.den.degree() <= 0) {
    Polynomial d = Polynomial::constant(f.den.c.empty() ? kOne : f.den.c[0]);
    return RationalMap(f.num.derivative() * (kOne / d.c[0]), Polynomial::constant(kOne));
  }
  // A pole of order k contributes a root of multiplicity k-1 to w; cancel it
  // against den^2 so the result stays coprime.
  auto poles = cluster_roots(roots_all(f.den, 1e-10));
  Polynomial d2 = Polynomial::constant(f.den.lead() * f.den.lead());
  for (auto& [r, k] : poles) {
    for (int i = 0; i < k - 1; ++i) w = deflate(w, r);
    d2 = d2 * linear(r).pow(k + 1);
  }
  return RationalMap(std::move(w), std::move(d2));
}

Complex derivative_at(const RationalMap& f, Complex z) {
  Complex n = f.num.eval(z), d = f.den.eval(z);
  Complex np = f.num.derivative().eval(z), dp = f.den.derivative().eval(z);
  return (np * d - n * dp) / (d * d);
}

RationalMap conjugate_by_reciprocal(const RationalMap& f) {
  int n = std::max(f.num.degree(), f.den.degree());
  return RationalMap(f.den.reversed(n), f.num.reversed(n));
}

RationalMap precompose_reciprocal(const RationalMap& f) {
  int n = std::max(f.num.degree(), f.den.degree());
  return RationalMap(f.num.reversed(n), f.den.reversed(n));
}

RationalMap postcompose_reciprocal(const RationalMap& f) {
  return RationalMap(f.den, f.num);
}

RationalMap add_pole_at_origin(const RationalMap& f, Complex coeff, int k) {
  Polynomial zk = Polynomial::monomial(k);
  return RationalMap(f.num * zk + f.den * coeff, f.den * zk);
}

RationalMap add_simple_pole(const RationalMap& f, Complex coeff, Complex pole) {
  Polynomial l = linear(pole);
  return RationalMap(f.num * l + f.den * coeff, f.den * l);
}

// ---- catalog ----

static RationalMap build_unicritical(int q, Complex c) {
  Polynomial n = Polynomial::monomial(q);
  n.c[0] = c;
  return RationalMap(std::move(n), Polynomial::constant(kOne));
}

static RationalMap build_impl(const FamilySpec& spec) {
  struct V {
    RationalMap operator()(const Unicritical& u) const {
      if (u.q < 2) throw DegenerateFamily("unicritical: q must be >= 2");
      return build_unicritical(u.q, u.c);
    }
    RationalMap operator()(const QuarticPerturbed& p) const {
      if (p.lambda == kZero) return build_unicritical(2, p.c);
      Polynomial d = linear(p.c).pow(2);
      Polynomial n = build_unicritical(2, p.c).num * d + Polynomial::constant(p.lambda);
      return RationalMap(std::move(n), std::move(d));
    }
    RationalMap operator()(const MultibrotPerturbed& p) const {
      if (p.q < 3) throw DegenerateFamily("multibrot: q must be >= 3");
      if (p.mu == kZero) return build_unicritical(p.q, p.b);
      Polynomial d = linear(p.b);
      Polynomial n = build_unicritical(p.q, p.b).num * d + Polynomial::constant(p.mu);
      return RationalMap(std::move(n), std::move(d));
    }
    RationalMap operator()(const CubicPerturbed& p) const {
      Complex s = std::sqrt(-p.a);
      if (p.branch != 0) s = -s;
      Complex k = kOne + p.a + s;
      if (std::abs(k) < 1e-12)
        throw DegenerateFamily("cubic: 1 + a + sqrt(-a) vanishes");
      RationalMap base(Polynomial({p.a, kZero, kOne}), Polynomial::monomial(2));
      if (p.nu == kZero) return base;
      return add_simple_pole(base, k * p.nu, kOne + p.nu);
    }
    RationalMap operator()(const McMullen& p) const {
      if (p.ell < 2 || p.m < 1) throw DegenerateFamily("mcmullen: need ell>=2, m>=1");
      if (p.lambda == kZero) return build_unicritical(p.ell, p.c);
      Polynomial zm = Polynomial::monomial(p.m);
      Polynomial n = build_unicritical(p.ell, p.c).num * zm + Polynomial::constant(p.lambda);
      return RationalMap(std::move(n), std::move(zm));
    }
    RationalMap operator()(const Godillon& g) const {
      Complex l = g.lambda;
      if (l == kZero)
        return RationalMap(Polynomial::constant(kOne), linear(kOne).pow(2));
      Complex a1 = kOne - 4.0 * l + 6.0 * l * l - l * l * l;
      Polynomial n = Polynomial({-2.0 * l * l * l, a1}) * (kOne - l);
      Polynomial lin({-2.0 * l * l * (kOne - l), kOne - l - l * l});
      return RationalMap(std::move(n), linear(kOne).pow(2) * lin);
    }
    RationalMap operator()(const PilgrimTan& p) const {
      // z^2/(1-z^2) + lambda/z^3
      RationalMap base(Polynomial::monomial(2), Polynomial({kOne, kZero, -kOne}));
      if (p.lambda == kZero) return base;
      return add_pole_at_origin(base, p.lambda, 3);
    }
    RationalMap operator()(const Lyubich& q) const {
      if (q.a == kZero) throw DegenerateFamily("lyubich: a must be nonzero");
      return RationalMap(Polynomial({q.a, kZero, kOne}), Polynomial::monomial(2));
    }
    RationalMap operator()(const TwicePerturbedBasilica& p) const {
      // 1/z o (1/z o (z^2 - 1 + lambda/z^3) o 1/z + mu/z^7) o 1/z
      RationalMap mid(Polynomial({p.lambda, kZero, kZero, -kOne, kZero, kOne}),
                      Polynomial::monomial(3));
      RationalMap a = conjugate_by_reciprocal(mid);
      if (p.mu != kZero) a = add_pole_at_origin(a, p.mu, 7);
      return conjugate_by_reciprocal(a);
    }
  };
  return std::visit(V{}, spec.family);
}

RationalMap build(const FamilySpec& spec) {
  try {
    return build_impl(spec);
  } catch (const DegenerateFamily&) {
    throw;
  } catch (const Error& e) {
    throw DegenerateFamily(spec.name() + ": " + e.what());
  }
}

// ---- critical data ----

int CriticalData::ramification_sum() const {
  int s = 0;
  for (int d : local_degrees) s += d - 1;
  return s;
}

// Multiplicity of 0 as a root, by counting structurally-zero low coefficients.
static int order_at_origin(const Polynomial& p, double rel = 1e-9) {
  double maxc = 0.0;
  for (auto v : p.c) maxc = std::max(maxc, std::abs(v));
  int k = 0;
  while (k < int(p.c.size()) && std::abs(p.c[k]) <= rel * maxc) ++k;
  return k;
}

CriticalData critical_data(const RationalMap& f) {
  CriticalData out;
  Polynomial w = f.num.derivative() * f.den - f.num * f.den.derivative();
  w.trim(1e-14 * [&] {
    double m = 0.0;
    for (auto v : w.c) m = std::max(m, std::abs(v));
    return m > 0 ? m : 1.0;
  }());
  if (w.degree() >= 1) {
    std::vector<Complex> roots;
    try {
      roots = roots_all(w, 1e-11);
    } catch (const NoConvergence& e) {
      throw RootFindingFailed(e.what());
    }
    for (auto& [r, mult] : cluster_roots(std::move(roots))) {
      SpherePoint pt = SpherePoint::from_affine(r);
      out.points.push_back(pt);
      out.values.push_back(f.eval(pt));
      out.local_degrees.push_back(mult + 1);
    }
  }
  // Behavior at infinity, read off the reciprocal conjugate at the origin.
  RationalMap g = conjugate_by_reciprocal(f);
  Polynomial wg = g.num.derivative() * g.den - g.num * g.den.derivative();
  int k = order_at_origin(wg);
  if (k >= 1 && !wg.is_zero()) {
    SpherePoint inf = SpherePoint::infinity();
    out.points.push_back(inf);
    out.values.push_back(f.eval(inf));
    out.local_degrees.push_back(k + 1);
  }
  if (out.ramification_sum() != 2 * f.degree - 2)
    throw RootFindingFailed("critical_data: Riemann-Hurwitz count mismatch (" +
                            std::to_string(out.ramification_sum()) + " vs " +
                            std::to_string(2 * f.degree - 2) + ")");
  return out;
}

// ---- centers ----

std::vector<CenterParam> find_centers(int q, int period) {
  if (q < 2 || period < 1 || period > 8)
    throw Error("find_centers: need q >= 2 and 1 <= period <= 8");
  // Orbit polynomial of 0 in the parameter: P_1 = c, P_{k+1} = P_k^q + c.
  std::vector<Polynomial> orbit;
  orbit.push_back(Polynomial::monomial(1));
  for (int k = 1; k < period; ++k)
    orbit.push_back(orbit.back().pow(q) + Polynomial::monomial(1));

  std::vector<CenterParam> out;
  const Polynomial& p = orbit.back();
  if (period == 1) {
    out.push_back({kZero, false});
    return out;
  }
  for (auto& [r, mult] : cluster_roots(roots_all(p, 1e-12))) {
    CenterParam cp;
    cp.value = r;
    for (int j = 1; j < period; ++j) {
      if (period % j == 0 && std::abs(orbit[j - 1].eval(r)) < 1e-8) {
        cp.divisor_period = true;
        break;
      }
    }
    for (int i = 0; i < mult; ++i) out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const CenterParam& a, const CenterParam& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

Complex lyubich_excluded_parameter() { return Complex(-(3.0 + std::sqrt(5.0)) / 2.0, 0.0); }

std::vector<CenterParam> lyubich_centers(int max_period) {
  if (max_period < 3 || max_period > 8)
    throw Error("lyubich_centers: need 3 <= max_period <= 8");
  // Track Q_a^k(0) = N_k(a)/D_k(a); the orbit starts 0 -> inf -> 1, so seed at
  // k = 2 with N/D = 1 and use N_{k+1} = N_k^2 + a D_k^2, D_{k+1} = N_k^2.
  Polynomial N = Polynomial::constant(kOne), D = Polynomial::constant(kOne);
  std::vector<CenterParam> out;
  Complex excluded = lyubich_excluded_parameter();
  for (int p = 3; p <= max_period; ++p) {
    Polynomial N2 = N * N;
    Polynomial next = N2 + Polynomial::monomial(1) * (D * D);
    D = N2;
    N = next;
    if (N.degree() < 1) continue;
    for (auto& [r, mult] : cluster_roots(roots_all(N, 1e-12))) {
      (void)mult;
      if (std::abs(r) < 1e-10) continue;
      if (std::abs(r - excluded) < 1e-10) continue;
      bool dup = false;
      for (auto& c : out) dup = dup || std::abs(c.value - r) < 1e-8;
      if (!dup) out.push_back({r, false});
    }
  }
  return out;
}

// ---- FamilySpec plumbing ----

std::string FamilySpec::name() const {
  struct V {
    std::string operator()(const Unicritical&) const { return "unicritical"; }
    std::string operator()(const QuarticPerturbed&) const { return "quartic"; }
    std::string operator()(const MultibrotPerturbed&) const { return "multibrot"; }
    std::string operator()(const CubicPerturbed&) const { return "cubic"; }
    std::string operator()(const McMullen&) const { return "mcmullen"; }
    std::string operator()(const Godillon&) const { return "godillon"; }
    std::string operator()(const PilgrimTan&) const { return "pilgrimtan"; }
    std::string operator()(const Lyubich&) const { return "lyubich"; }
    std::string operator()(const TwicePerturbedBasilica&) const { return "basilica_twice"; }
  };
  return std::visit(V{}, family);
}

static std::string fmt_complex(Complex v) {
  char buf[64];
  if (v.imag() == 0.0) {
    snprintf(buf, sizeof buf, "%.17g", v.real());
  } else {
    snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
  }
  return buf;
}

static Complex parse_complex(const std::string& s) {
  size_t comma = s.find(',');
  if (comma == std::string::npos) return Complex(std::stod(s), 0.0);
  return Complex(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

std::string FamilySpec::to_key_values() const {
  std::ostringstream os;
  os << "family = " << name() << "\n";
  struct V {
    std::ostringstream& os;
    void operator()(const Unicritical& u) {
      os << "q = " << u.q << "\nc = " << fmt_complex(u.c) << "\n";
    }
    void operator()(const QuarticPerturbed& p) {
      os << "c = " << fmt_complex(p.c) << "\nlambda = " << fmt_complex(p.lambda) << "\n";
    }
    void operator()(const MultibrotPerturbed& p) {
      os << "q = " << p.q << "\nb = " << fmt_complex(p.b)
         << "\nmu = " << fmt_complex(p.mu) << "\n";
    }
    void operator()(const CubicPerturbed& p) {
      os << "a = " << fmt_complex(p.a) << "\nnu = " << fmt_complex(p.nu)
         << "\nbranch = " << p.branch << "\n";
    }
    void operator()(const McMullen& p) {
      os << "ell = " << p.ell << "\nm = " << p.m << "\nc = " << fmt_complex(p.c)
         << "\nlambda = " << fmt_complex(p.lambda) << "\n";
    }
    void operator()(const Godillon& g) { os << "lambda = " << fmt_complex(g.lambda) << "\n"; }
    void operator()(const PilgrimTan& p) { os << "lambda = " << fmt_complex(p.lambda) << "\n"; }
    void operator()(const Lyubich& q) { os << "a = " << fmt_complex(q.a) << "\n"; }
    void operator()(const TwicePerturbedBasilica& p) {
      os << "lambda = " << fmt_complex(p.lambda) << "\nmu = " << fmt_complex(p.mu) << "\n";
    }
  } v{os};
  std::visit(v, family);
  return os.str();
}

std::map<std::string, std::string> parse_key_values(const std::string& text);

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

FamilySpec FamilySpec::from_key_values(const std::string& text) {
  auto kv = parse_key_values(text);
  auto get = [&](const std::string& key, const char* dflt = nullptr) -> std::string {
    auto it = kv.find(key);
    if (it != kv.end()) return it->second;
    if (dflt) return dflt;
    throw Error("family spec: missing key '" + key + "'");
  };
  std::string fam = get("family");
  FamilySpec spec;
  if (fam == "unicritical") {
    spec.family = Unicritical{std::stoi(get("q", "2")), parse_complex(get("c"))};
  } else if (fam == "quartic") {
    spec.family = QuarticPerturbed{parse_complex(get("c")), parse_complex(get("lambda"))};
  } else if (fam == "multibrot") {
    spec.family = MultibrotPerturbed{std::stoi(get("q", "3")), parse_complex(get("b")),
                                     parse_complex(get("mu"))};
  } else if (fam == "cubic") {
    spec.family = CubicPerturbed{parse_complex(get("a")), parse_complex(get("nu")),
                                 std::stoi(get("branch", "0"))};
  } else if (fam == "mcmullen") {
    spec.family = McMullen{std::stoi(get("ell")), std::stoi(get("m")),
                           parse_complex(get("c", "0")), parse_complex(get("lambda"))};
  } else if (fam == "godillon") {
    spec.family = Godillon{parse_complex(get("lambda"))};
  } else if (fam == "pilgrimtan") {
    spec.family = PilgrimTan{parse_complex(get("lambda"))};
  } else if (fam == "lyubich") {
    spec.family = Lyubich{parse_complex(get("a"))};
  } else if (fam == "basilica_twice") {
    spec.family = TwicePerturbedBasilica{parse_complex(get("lambda")), parse_complex(get("mu"))};
  } else {
    throw Error("family spec: unknown family '" + fam + "'");
  }
  return spec;
}

}  // namespace jb
