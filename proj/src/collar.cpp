#include "apw/collar.hpp"

#include <algorithm>

namespace apw {

namespace {

Rational floor_rat(const Rational& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return Rational(q);
}

Rational mod1(const Rational& r) { return r - floor_rat(r); }

}  // namespace

void CollarFamily::validate() const {
    if (m <= 0 || m % 2 != 0) throw std::invalid_argument("collar base dimension must be even");
    auto check_shape = [&](const QMatrix& x, const char* name) {
        if (x.rows() != static_cast<size_t>(m) || x.cols() != static_cast<size_t>(m))
            throw std::invalid_argument(std::string(name) + ": wrong shape");
        if (!x.is_antisymmetric())
            throw std::invalid_argument(std::string(name) + " must be antisymmetric");
    };
    check_shape(B, "B");
    check_shape(beta, "beta");
    check_shape(gamma, "gamma");
    if (phi.size() != static_cast<size_t>(m))
        throw std::invalid_argument("phi must have one component per base coordinate");
    if (eps <= 0 || delta <= 0) throw std::invalid_argument("eps and delta must be positive");
    if (euler_k == 0 && !gamma.is_zero())
        throw std::invalid_argument("trivial bundle requires gamma = 0");
    if (euler_k != 0) {
        if (m != 2)
            throw std::invalid_argument("nontrivial bundles are only carried over a 2-torus base");
        if (gamma.at(0, 1) != ScalarK(Rational(-euler_k)))
            throw std::invalid_argument("gamma_12 must equal -euler_k");
    }
    if (B.is_rational()) {
        if (det(B) == 0) throw std::invalid_argument("B must be invertible");
    } else if (rank(B) != static_cast<unsigned>(m)) {
        throw std::invalid_argument("B must be invertible");
    }
}

ScalarK pfaffian(const QMatrix& a) {
    if (!a.is_square() || a.rows() % 2 != 0)
        throw std::invalid_argument("pfaffian needs an even square matrix");
    if (!a.is_antisymmetric()) throw std::invalid_argument("pfaffian needs antisymmetry");
    size_t n = a.rows();
    if (n == 0) return ScalarK(1);
    if (n == 2) return a.at(0, 1);
    // expansion along the first row
    ScalarK out(0);
    for (size_t j = 1; j < n; ++j) {
        if (a.at(0, j).is_zero()) continue;
        QMatrix minor(n - 2, n - 2);
        std::vector<size_t> keep;
        for (size_t t = 1; t < n; ++t)
            if (t != j) keep.push_back(t);
        for (size_t r = 0; r < keep.size(); ++r)
            for (size_t c = 0; c < keep.size(); ++c) minor.at(r, c) = a.at(keep[r], keep[c]);
        ScalarK term = a.at(0, j) * pfaffian(minor);
        if (j % 2 == 0) term = -term;
        out += term;
    }
    return out;
}

Rational default_delta(const QMatrix& b, const QMatrix& beta, const QMatrix& gamma) {
    // Work in the formal polynomial ring with tags "u","s"; the Pfaffian of
    // N(u,s) is then a polynomial whose constant term is Pf(B) != 0.
    if (!b.is_rational() || !beta.is_rational() || !gamma.is_rational())
        throw std::invalid_argument("default_delta requires rational family data");
    QMatrix n = b + ScalarK::tag("u") * beta + ScalarK::tag("s") * gamma;
    ScalarK pf = pfaffian(n);
    Rational constant = rat_abs(pf.rational_part());
    if (constant == 0) throw std::invalid_argument("B must be invertible");
    Rational delta(1);
    for (int halvings = 0; halvings < 64; ++halvings) {
        Rational bound(0);
        // sum |c_mono| * delta^{deg} over the non-constant monomials
        for (const auto& [mono, c] : pf.coeffs()) {
            if (mono.empty()) continue;
            Rational term = rat_abs(c);
            for (size_t i = 0; i < mono.size(); ++i) term *= delta;
            bound += term;
        }
        if (bound < constant) return delta;
        delta /= 2;
    }
    throw std::invalid_argument("could not certify an invertibility radius");
}

CollarFamily make_collar_family(const QMatrix& b, const QMatrix& beta,
                                const std::vector<ScalarK>& phi, long long euler_k,
                                const Rational& eps) {
    CollarFamily fam;
    fam.m = static_cast<int>(b.rows());
    fam.B = b;
    fam.beta = beta;
    fam.phi = phi;
    fam.euler_k = euler_k;
    fam.eps = eps;
    fam.gamma = QMatrix::zero(b.rows(), b.cols());
    if (euler_k != 0) {
        if (b.rows() != 2)
            throw std::invalid_argument("nontrivial bundles are only carried over a 2-torus base");
        fam.gamma.at(0, 1) = ScalarK(Rational(-euler_k));
        fam.gamma.at(1, 0) = ScalarK(Rational(euler_k));
    }
    if (b.is_rational() && beta.is_rational())
        fam.delta = default_delta(b, beta, fam.gamma);
    fam.validate();
    return fam;
}

QMatrix n_matrix(const CollarFamily& fam, const ScalarK& u, const ScalarK& s) {
    return fam.B + u * fam.beta + s * fam.gamma;
}

ScalarK m2_scale(const QMatrix& n) {
    if (n.rows() != 2 || n.cols() != 2)
        throw std::invalid_argument("m2_scale is for 2x2 matrices");
    return n.at(1, 0);
}

std::vector<ScalarK> kernel_direction(const CollarFamily& fam, const ScalarK& u,
                                      const ScalarK& s) {
    QMatrix n = n_matrix(fam, u, s);
    if (!n.is_rational())
        throw std::invalid_argument(
            "kernel_direction: N(u,s) has irrational entries; symbolic parameters are only "
            "supported where the terms they multiply vanish");
    std::vector<ScalarK> rhs(fam.phi.size());
    for (size_t i = 0; i < fam.phi.size(); ++i) rhs[i] = u * fam.phi[i];
    auto c = solve(n, rhs);
    if (!c)
        throw SingularParameterError("N(u,s) is singular at u=" + u.str() + ", s=" + s.str());

    // kernel identity N c = u phi and orthogonality c . phi, both formal-exact
    auto back = n.apply(*c);
    for (size_t i = 0; i < back.size(); ++i)
        if (back[i] != rhs[i]) throw std::logic_error("kernel identity violated");
    ScalarK dot(0);
    for (size_t i = 0; i < c->size(); ++i) dot += (*c)[i] * fam.phi[i];
    if (!dot.is_zero()) throw std::logic_error("kernel direction not orthogonal to phi");
    return *c;
}

OrbitVerdict classify_orbit(const std::vector<ScalarK>& c, long long euler_k) {
    OrbitVerdict v;
    if (euler_k == 0) {
        bool all_rational = true;
        for (const auto& ci : c) all_rational = all_rational && ci.is_rational();
        if (all_rational) {
            Int l = 1;
            for (const auto& ci : c) l = lcm(l, denominator(ci.rational_part()));
            v.kind = OrbitVerdict::Kind::Closed;
            v.period = Rational(l);
            v.certificate = "all components rational; period = lcm of denominators";
        } else {
            v.kind = OrbitVerdict::Kind::NonClosed;
            v.certificate = "irrational component forbids closing against the unit fiber rate";
        }
        return v;
    }
    if (c.size() != 2)
        throw std::invalid_argument("nontrivial bundle verdicts expect a 2-component direction");
    bool zero = c[0].is_zero() && c[1].is_zero();
    if (zero) {
        v.kind = OrbitVerdict::Kind::Closed;
        v.period = Rational(1);
        v.certificate = "zero base direction: orbits are the fiber circles";
        return v;
    }
    if (rationally_independent(c)) {
        v.kind = OrbitVerdict::Kind::NonClosed;
        v.certificate = "rationally independent components project to a dense line flow";
        return v;
    }
    v.kind = OrbitVerdict::Kind::Undetermined;
    v.certificate = "nonzero rationally dependent direction: closedness depends on holonomy";
    return v;
}

ParamReport aperiodic_params(const CollarFamily& fam) {
    fam.validate();
    ParamReport report;
    report.delta = fam.delta;
    if (fam.euler_k == 0) {
        report.branch = "i";
        report.u_set = USet::AllButCountablyMany;
        bool phi_nonzero = false;
        for (const auto& p : fam.phi) phi_nonzero = phi_nonzero || !p.is_zero();
        if (!phi_nonzero) {
            report.met = false;
            report.reason = "criterion not met: phi vanishes, no perturbation direction";
            return report;
        }
        report.met = true;
        bool phi_rational = true;
        for (const auto& p : fam.phi) phi_rational = phi_rational && p.degree() == 0;
        std::vector<ScalarK> us;
        for (const auto& frac : {rat(1, 2), rat(-1, 3), rat(1, 5)})
            us.emplace_back(Rational(frac * fam.delta));
        if (fam.beta.is_zero() && phi_rational)
            us.push_back(ScalarK::tag("alpha", fam.delta / 7));
        for (const auto& u : us) {
            ParamSample s;
            s.u = u;
            s.s = ScalarK(0);
            s.verdict = classify_orbit(kernel_direction(fam, u, ScalarK(0)), fam.euler_k);
            report.samples.push_back(std::move(s));
        }
        return report;
    }

    report.branch = "ii";
    report.u_set = USet::AllNonzeroU;
    if (!rationally_independent(fam.phi)) {
        report.met = false;
        report.reason = "criterion not met: phi components rationally dependent";
        return report;
    }
    report.met = true;
    Rational srange = std::min(fam.delta, fam.eps);
    for (const auto& uf : {rat(1, 2), rat(-1, 3), rat(1, 5)}) {
        for (const auto& sf : {rat(-1, 2), rat(0), rat(1, 2)}) {
            ParamSample s;
            s.u = ScalarK(Rational(uf * fam.delta));
            s.s = ScalarK(Rational(sf * srange));
            s.verdict = classify_orbit(kernel_direction(fam, s.u, s.s), fam.euler_k);
            report.samples.push_back(std::move(s));
        }
    }
    return report;
}

Rational BumpSpec::value(const Rational& s) const {
    Rational a = rat_abs(s);
    if (a <= eps / 2) return 1;
    if (a >= eps) return 0;
    Rational t = (a - eps / 2) / (eps / 2);  // in (0,1)
    return 1 - 3 * t * t + 2 * t * t * t;
}

Rational BumpSpec::derivative(const Rational& s) const {
    Rational a = rat_abs(s);
    if (a <= eps / 2 || a >= eps) return 0;
    Rational t = (a - eps / 2) / (eps / 2);
    Rational d = (6 * t * t - 6 * t) * (2 / eps);
    return s < 0 ? -d : d;
}

double BumpSpec::value(double s) const {
    double e = to_double(eps), a = std::abs(s);
    if (a <= e / 2) return 1.0;
    if (a >= e) return 0.0;
    double t = (a - e / 2) / (e / 2);
    return 1.0 - 3 * t * t + 2 * t * t * t;
}

double BumpSpec::derivative(double s) const {
    double e = to_double(eps), a = std::abs(s);
    if (a <= e / 2 || a >= e) return 0.0;
    double t = (a - e / 2) / (e / 2);
    double d = (6 * t * t - 6 * t) * (2 / e);
    return s < 0 ? -d : d;
}

NilPoint::NilPoint(std::vector<Rational> base_, Rational fiber_, Rational s_)
    : base(std::move(base_)), fiber(mod1(fiber_)), s(std::move(s_)) {
    for (auto& x : base) x = mod1(x);
}

QMatrix collar_form_matrix(const CollarFamily& fam, const ScalarK& u, const ScalarK& s) {
    size_t m = static_cast<size_t>(fam.m);
    QMatrix omega(m + 2, m + 2);
    QMatrix n = n_matrix(fam, u, s);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) omega.at(i, j) = n.at(i, j);
    for (size_t i = 0; i < m; ++i) {
        ScalarK coupled = u * fam.phi[i];
        omega.at(i, m) = -coupled;  // u a ∧ p*phi on (base_i, fiber)
        omega.at(m, i) = coupled;
    }
    omega.at(m + 1, m) = ScalarK(1);  // ds ∧ a on (s, fiber)
    omega.at(m, m + 1) = ScalarK(-1);
    return omega;
}

std::vector<ScalarK> interior_product(const QMatrix& omega, const std::vector<ScalarK>& x) {
    if (x.size() != omega.rows()) throw std::invalid_argument("frame vector length mismatch");
    std::vector<ScalarK> cov(omega.cols());
    for (size_t j = 0; j < omega.cols(); ++j)
        for (size_t i = 0; i < omega.rows(); ++i) cov[j] += x[i] * omega.at(i, j);
    return cov;
}

std::vector<ScalarK> hamiltonian_field(const CollarFamily& fam, const ScalarK& u,
                                       const BumpSpec& f, const NilPoint& pt) {
    if (rat_abs(pt.s) >= fam.eps)
        throw std::invalid_argument("point lies outside the collar");
    Rational slope = f.derivative(pt.s);
    std::vector<ScalarK> field(static_cast<size_t>(fam.m) + 2, ScalarK(0));
    if (slope == 0) return field;  // critical slice: the field vanishes
    auto c = kernel_direction(fam, u, ScalarK(pt.s));
    for (size_t i = 0; i < c.size(); ++i) field[i] = ScalarK(slope) * c[i];
    field[c.size()] = ScalarK(slope);
    return field;
}

std::vector<ScalarK> hamiltonian_residual(const CollarFamily& fam, const ScalarK& u,
                                          const BumpSpec& f, const NilPoint& pt) {
    auto field = hamiltonian_field(fam, u, f, pt);
    auto cov = interior_product(collar_form_matrix(fam, u, ScalarK(pt.s)), field);
    cov.back() += ScalarK(f.derivative(pt.s));  // + dH, supported on the ds direction
    return cov;
}

}  // namespace apw
