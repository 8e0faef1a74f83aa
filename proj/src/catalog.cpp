#include "apw/catalog.hpp"

#include "apw/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace apw {

namespace {

const ScalarK kAlpha = ScalarK::tag("alpha");

QMatrix block_standard_form(int m) {
    QMatrix b(m, m);
    for (int i = 0; i + 1 < m; i += 2) {
        b.at(i, i + 1) = ScalarK(1);
        b.at(i + 1, i) = ScalarK(-1);
    }
    return b;
}

Verdict branch_one_verdict(const Subspace& image, const std::string& source) {
    Verdict v;
    if (image.dim() == 0) return v;
    AperiodicCert cert;
    cert.branch = "i";
    cert.u_set = USet::AllButCountablyMany;
    for (const auto& x : image.basis().front()) cert.phi.emplace_back(x);
    cert.derivation.push_back(source);
    cert.derivation.push_back("trivial neck bundle and nonzero image: branch (i)");
    v.kind = Verdict::Kind::Aperiodic;
    v.cert = std::move(cert);
    return v;
}

// Free-part projection of Z^n modulo the row span of `relations`: the rows of
// V^T indexed by zero elementary divisors, so that P x are the coordinates of
// the class of x in the free quotient.
IntMatrix free_quotient_projection(const IntMatrix& relations) {
    size_t n = relations.cols();
    auto snf = smith_normal_form(relations);
    std::vector<size_t> free_rows;
    size_t diag = std::min(relations.rows(), relations.cols());
    for (size_t i = 0; i < n; ++i)
        if (i >= diag || snf.d.at(i, i) == 0) free_rows.push_back(i);
    IntMatrix p(free_rows.size(), n);
    IntMatrix vt = snf.v.transpose();
    for (size_t r = 0; r < free_rows.size(); ++r)
        for (size_t c = 0; c < n; ++c) p.at(r, c) = vt.at(free_rows[r], c);
    return p;
}

}  // namespace

void GroupPresentation::validate() const {
    if (generators < 1)
        throw std::invalid_argument("the empty presentation is excluded; give a generator");
    for (const auto& word : relators)
        for (const auto& [gen, exp] : word) {
            (void)exp;
            if (gen < 1 || gen > generators)
                throw std::invalid_argument("relator uses an undeclared generator");
        }
}

IntMatrix GroupPresentation::relation_matrix() const {
    validate();
    IntMatrix m(relators.size(), generators);
    for (size_t r = 0; r < relators.size(); ++r)
        for (const auto& [gen, exp] : relators[r]) m.at(r, gen - 1) += exp;
    return m;
}

AbelianGroup abelianization(const IntMatrix& relations) {
    AbelianGroup out;
    if (relations.cols() == 0) return out;
    auto snf = smith_normal_form(relations);
    size_t diag = std::min(relations.rows(), relations.cols());
    size_t nonzero = 0;
    for (size_t i = 0; i < diag; ++i) {
        Int d = snf.d.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.torsion.push_back(d);
    }
    out.rank = static_cast<long long>(relations.cols() - nonzero);
    return out;
}

GeographyResult geography_covered(const GeographyPoint& pt) {
    long long chi = pt.chi, c = pt.c;
    GeographyResult res;
    if (c < 0 || c > 8 * chi + 2) {
        res.status = GeographyStatus::OutOfRegion;
        return res;
    }
    bool even = (c % 2 == 0);
    auto covered = [&](const char* label) {
        res.status = GeographyStatus::Covered;
        res.range_label = label;
        return res;
    };
    if (even && 0 <= c && c <= 8 * chi - 10) return covered("A");
    if (!even && 1 <= c && c <= 8 * chi - 17) return covered("B");
    if (!even && 7 <= c && c <= 8 * chi - 11) return covered("C");
    if (even && 364 <= c && c <= 8 * chi + 2) return covered("D");
    if (!even && 383 <= c && c <= 8 * chi - 3) return covered("E");
    if (!even && c == 8 * chi + 1 && c >= 385) return covered("F");
    if (!even && c == 8 * chi - 1 && c >= 391) return covered("G");
    res.status = GeographyStatus::NotCovered;
    return res;
}

std::vector<std::pair<GeographyPoint, GeographyResult>> geography_enumerate(long long chi_min,
                                                                            long long chi_max) {
    if (chi_min > chi_max) throw std::invalid_argument("empty chi range");
    std::vector<std::pair<GeographyPoint, GeographyResult>> out;
    for (long long chi = chi_min; chi <= chi_max; ++chi)
        for (long long c = 0; c <= 8 * chi + 2; ++c) {
            GeographyPoint pt{chi, c};
            out.emplace_back(pt, geography_covered(pt));
        }
    return out;
}

std::optional<SumResult> geography_trace(const GeographyPoint& pt) {
    GeographyResult res = geography_covered(pt);
    if (!res.covered() || (res.range_label != "A" && res.range_label != "D"))
        return std::nullopt;

    // characteristic coordinates back to (e, sigma)
    auto invariants = [](long long chi, long long c) {
        return std::pair<long long, long long>{12 * chi - c, c - 8 * chi};
    };

    Summand host, partner;
    if (res.range_label == "A") {
        // simply connected block, summed with a standard piece whose torus
        // image has rank one and normally generates
        auto [e, sigma] = invariants(pt.chi, pt.c);
        host.name = "block(chi=" + std::to_string(pt.chi) + ",c=" + std::to_string(pt.c) + ")";
        host.euler_char = e;
        host.signature = sigma;
        host.b1 = 0;
        host.simply_connected = true;
        MarkedTorus t1{"T1", 0, ScalarK(1), H1Map::zero(), 0, true, true, false};
        host.tori.push_back(t1);

        partner.name = "rank-one-piece";
        partner.euler_char = 0;
        partner.signature = 0;
        partner.b1 = 1;
        partner.simply_connected = false;
        MarkedTorus t2{"T2", 0, ScalarK(1), H1Map::known(IntMatrix{{1, 0}}), 1, true, false, true};
        partner.tori.push_back(t2);
    } else {
        // the (364, 45) seed piece with simply connected torus complement,
        // summed with a declared partner realizing the offset
        auto [es, ss] = invariants(45, 364);
        host.name = "seed(chi=45,c=364)";
        host.euler_char = es;
        host.signature = ss;
        host.b1 = 0;
        host.simply_connected = true;
        MarkedTorus t{"T", 0, ScalarK(1), H1Map::zero(), 0, true, true, false};
        host.tori.push_back(t);

        auto [ep, sp] = invariants(pt.chi - 45, pt.c - 364);
        partner.name = "offset(chi'=" + std::to_string(pt.chi - 45) +
                       ",c'=" + std::to_string(pt.c - 364) + ")";
        partner.euler_char = ep;
        partner.signature = sp;
        partner.b1 = 1;
        partner.simply_connected = false;
        MarkedTorus t2{"T2", 0, ScalarK(1), H1Map::known(IntMatrix{{1, 0}}), 1, true, false, true};
        partner.tori.push_back(t2);
    }

    SumSpec spec;
    spec.left = host;
    spec.right = partner;
    spec.left_torus = host.tori.front().label;
    spec.right_torus = "T2";
    return symplectic_sum(spec);
}

FamilyVerdict zehnder_torus(int n) {
    if (n < 2) throw std::invalid_argument("the torus family needs total dimension at least 4");
    int m = 2 * n - 2;
    std::vector<ScalarK> phi(m, ScalarK(0));
    phi[0] = ScalarK(1);
    FamilyVerdict out{make_collar_family(block_standard_form(m), QMatrix::zero(m, m), phi, 0),
                      Subspace::full(m),
                      branch_one_verdict(Subspace::full(m),
                                         "constant-coefficient torus family: image is all of "
                                         "the first cohomology of the base")};
    return out;
}

MappingTorusResult kodaira_thurston(const IntMatrix& psi) {
    if (!is_sp_sl(psi))
        throw std::invalid_argument("suspension needs an integral linear symplectomorphism");
    MappingTorusResult out;
    out.image = mapping_torus_invariant(psi);

    size_t m = psi.rows();
    Summand& x = out.manifold;
    x.name = "S1 x T_psi";
    x.dim = static_cast<int>(m) + 2;
    x.euler_char = 0;
    if (x.dim == 4) x.signature = 0;
    x.simply_connected = false;
    x.b1 = 2 + static_cast<long long>(out.image.dim());

    out.verdict = branch_one_verdict(
        out.image, "fiber classes invariant under the monodromy survive to the total space");
    if (out.verdict.aperiodic()) x.aperiodic = out.verdict.cert;
    return out;
}

Summand cp2_with_cubic() {
    Summand s;
    s.name = "CP2";
    s.euler_char = 3;
    s.signature = 1;
    s.b1 = 0;
    s.simply_connected = true;
    MarkedTorus cubic;
    cubic.label = "cubic";
    cubic.self_int = 9;
    cubic.area = ScalarK(3);
    s.tori.push_back(cubic);
    return s;
}

Summand elliptic_e(int n) {
    if (n < 1) throw std::invalid_argument("elliptic surfaces are indexed from 1");

    // nine blow-ups on the cubic; the pencil provides a disjoint parallel
    // fiber with the same square and area
    Summand e = cp2_with_cubic();
    for (int i = 0; i < 9; ++i) e = blow_up(e, "cubic");
    e.name = "E(1)";
    MarkedTorus fiber = e.torus("cubic");
    fiber.label = "T(1)";
    fiber.complement_simply_connected = true;
    MarkedTorus parallel = fiber;
    parallel.label = "T(1)p";
    parallel.complement_simply_connected = false;
    e.tori = {fiber, parallel};

    for (int j = 2; j <= n; ++j) {
        SumSpec spec;
        spec.left = e;
        spec.left_torus = "T(" + std::to_string(j - 1) + ")";
        spec.right = elliptic_e(1);
        spec.right.name = "E(1)";
        spec.right_torus = "T(1)";
        SumResult r = symplectic_sum(spec);

        e = r.manifold;
        e.name = "E(" + std::to_string(j) + ")";
        // keep one surviving fiber and one parallel copy under fresh labels
        MarkedTorus tj = *e.find_torus("T(1)p");
        tj.label = "T(" + std::to_string(j) + ")";
        tj.complement_simply_connected = true;  // fiber complement stays simply connected
        MarkedTorus tjp = tj;
        tjp.label = "T(" + std::to_string(j) + ")p";
        tjp.complement_simply_connected = false;
        e.tori = {tj, tjp};
        e.minimal = true;  // annotation from the source constructions, not derived
        if (e.aperiodic) {
            e.aperiodic->disjoint_tori = {tj.label, tjp.label};
            e.aperiodic->derivation.push_back("hypersurface disjoint from the marked fibers");
        }
    }
    return e;
}

Summand log_transform(const Summand& en, int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("transform orders must be positive");
    int n = 0;
    if (en.name.size() > 3 && en.name.rfind("E(", 0) == 0) {
        size_t close = en.name.find(')');
        if (close != std::string::npos && close == en.name.size() - 1)
            n = std::atoi(en.name.substr(2, close - 2).c_str());
    }
    if (n < 2)
        throw std::invalid_argument(
            "log transforms are supported on fiber sums of degree at least two");
    if (p == 1 && q == 1) return en;
    Summand out = en;
    out.name = "E(" + std::to_string(n) + ")_{" + std::to_string(p) + "," + std::to_string(q) + "}";
    if (out.aperiodic) {
        out.aperiodic->derivation.push_back(
            "logarithmic transforms act in fiber neighborhoods disjoint from the hypersurface");
        out.aperiodic->derivation.push_back(
            "caveat: keep the perturbation parameter small enough for the singular fibers");
    }
    return out;
}

Summand s1_times_mk(const KnotData& k) {
    Summand s;
    s.name = "S1 x M_" + k.name;
    s.euler_char = 0;
    s.signature = 0;
    s.b1 = 2;
    s.simply_connected = false;
    MarkedTorus tk;
    tk.label = "TK";
    tk.self_int = 0;
    tk.area = ScalarK(1);
    // circle factor and surgery section both generate: rank two
    tk.h1_map = H1Map::known(IntMatrix{{1, 0}, {0, 1}});
    tk.pi1_image_rank = 2;
    // killing the torus image and the meridian trivializes the group
    tk.pi1_image_normally_generates = true;
    s.tori.push_back(tk);
    return s;
}

Summand knot_surgery(int n, const KnotData& k) {
    if (!k.fibered)
        throw std::invalid_argument("knot surgery carries a symplectic structure only for "
                                    "fibered knots");
    if (n < 2) throw std::invalid_argument("aperiodic knot surgeries start at degree two");

    Summand e1 = elliptic_e(1);
    Summand mk = s1_times_mk(k);
    mk = rescale(mk, e1.torus("T(1)").area);  // equal areas before the sum

    SumSpec first;
    first.left = e1;
    first.left_torus = "T(1)";
    first.right = mk;
    first.right_torus = "TK";
    SumResult e1k = symplectic_sum(first);

    Summand core = e1k.manifold;
    core.name = "E(1)_" + k.name;
    MarkedTorus t = *core.find_torus("T(1)p");
    t.label = "T";
    core.tori = {t};

    SumSpec second;
    second.left = elliptic_e(n - 1);
    second.left_torus = "T(" + std::to_string(n - 1) + ")";
    second.right = core;
    second.right_torus = "T";
    SumResult enk = symplectic_sum(second);

    Summand out = enk.manifold;
    out.name = "E(" + std::to_string(n) + ")_" + k.name;
    out.minimal = true;  // annotation from the source constructions, not derived
    return out;
}

GompfResult gompf_manifold(const GroupPresentation& p) {
    p.validate();
    int g = p.generators;
    const int cols = 2 * g + 2;  // a_1..a_g, b_1..b_g, base circle, alpha

    // loop system: the b-classes plus the abelianized relators; at least one
    // loop exists since g >= 1
    std::vector<std::pair<std::string, IntMatrix>> loops;  // (label, column in Z^{2g})
    for (int i = 0; i < g; ++i) {
        IntMatrix col(2 * g, 1);
        col.at(g + i, 0) = 1;
        loops.emplace_back("Tb" + std::to_string(i + 1), col);
    }
    IntMatrix rel = p.relation_matrix();
    for (size_t r = 0; r < rel.rows(); ++r) {
        IntMatrix col(2 * g, 1);
        for (int j = 0; j < g; ++j) col.at(j, 0) = rel.at(r, j);
        loops.emplace_back("Tr" + std::to_string(r + 1), col);
    }

    GompfResult out;

    // stage 0 record: surface times torus
    Summand x;
    x.name = "F" + std::to_string(g) + " x T2";
    x.euler_char = 0;  // e(F) * e(T2)
    x.signature = 0;
    x.b1 = cols;
    x.simply_connected = false;
    ScalarK fiber_area = elliptic_e(1).torus("T(1)").area;
    {
        MarkedTorus tz;
        tz.label = "Tz";
        tz.self_int = 0;
        tz.area = fiber_area;
        IntMatrix h(cols, 2);
        h.at(cols - 2, 0) = 1;  // base circle class
        h.at(cols - 1, 1) = 1;  // alpha class
        tz.h1_map = H1Map::known(h);
        tz.pi1_image_rank = 2;
        x.tori.push_back(tz);
        for (const auto& [label, col] : loops) {
            MarkedTorus t;
            t.label = label;
            t.self_int = 0;
            t.area = fiber_area;
            IntMatrix ht(cols, 2);
            for (int i = 0; i < 2 * g; ++i) ht.at(i, 0) = col.at(i, 0);
            ht.at(cols - 1, 1) = 1;  // every loop torus carries the alpha direction
            t.h1_map = H1Map::known(ht);
            t.pi1_image_rank = 2;
            x.tori.push_back(t);
        }
    }

    // accumulated relations on Z^{2g+2}: stage one kills the torus factor,
    // each later stage kills one loop column
    IntMatrix relations(0, cols);
    auto add_relation_rows = [&](const std::vector<IntMatrix>& rows) {
        IntMatrix next(relations.rows() + rows.size(), cols);
        for (size_t i = 0; i < relations.rows(); ++i)
            for (int j = 0; j < cols; ++j) next.at(i, j) = relations.at(i, j);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int j = 0; j < cols; ++j)
                next.at(relations.rows() + r, j) = rows[r].at(j, 0);
        relations = next;
    };

    std::vector<std::string> order;
    order.push_back("Tz");
    for (const auto& [label, col] : loops) order.push_back(label);

    for (size_t stage = 0; stage < order.size(); ++stage) {
        const std::string& label = order[stage];
        SumSpec spec;
        spec.left = x;
        spec.left_torus = label;
        spec.right = elliptic_e(1);
        spec.right_torus = "T(1)";
        SumResult r = symplectic_sum(spec);

        GompfStage record;
        record.stage = static_cast<int>(stage + 1);
        record.torus = label;
        record.image_rank = static_cast<unsigned>(r.image.dim());
        record.aperiodic = r.verdict.aperiodic();
        out.chain.push_back(record);
        out.verdict = r.verdict;

        // update the accumulated relations
        if (stage == 0) {
            IntMatrix base_row(cols, 1), alpha_row(cols, 1);
            base_row.at(cols - 2, 0) = 1;
            alpha_row.at(cols - 1, 0) = 1;
            add_relation_rows({base_row, alpha_row});
        } else {
            IntMatrix row(cols, 1);
            for (int j = 0; j < 2 * g; ++j) row.at(j, 0) = loops[stage - 1].second.at(j, 0);
            add_relation_rows({row});
        }

        // rebuild the surviving loop tori with homology images in the free
        // quotient of the accumulated relations
        Summand next = r.manifold;
        next.name = "XG_stage" + std::to_string(stage + 1);
        IntMatrix proj = free_quotient_projection(relations);
        next.b1 = static_cast<long long>(proj.rows());
        next.tori.clear();
        for (size_t future = stage + 1; future < order.size(); ++future) {
            const auto& [label2, col2] = loops[future - 1];
            MarkedTorus t;
            t.label = label2;
            t.self_int = 0;
            t.area = fiber_area;
            IntMatrix full_col(cols, 1);
            for (int j = 0; j < 2 * g; ++j) full_col.at(j, 0) = col2.at(j, 0);
            IntMatrix alpha_col(cols, 1);
            alpha_col.at(cols - 1, 0) = 1;
            IntMatrix h(proj.rows(), 2);
            IntMatrix pc = proj * full_col;
            IntMatrix pa = proj * alpha_col;
            for (size_t i = 0; i < proj.rows(); ++i) {
                h.at(i, 0) = pc.at(i, 0);
                h.at(i, 1) = pa.at(i, 0);
            }
            t.h1_map = H1Map::known(h);
            t.pi1_image_rank = static_cast<int>(rank(h.to_q()));
            next.tori.push_back(t);
        }
        x = next;
    }

    x.name = "X_G";
    out.h1 = abelianization(relations);
    out.manifold = x;
    if (out.verdict.aperiodic()) {
        out.manifold.aperiodic = out.verdict.cert;
        out.manifold.aperiodic->derivation.push_back(
            "chain of " + std::to_string(order.size()) + " fiber sums; last neck certifies");
    }
    return out;
}

SumResult elliptic_cp2_nontrivial_neck() {
    Summand e3 = elliptic_e(3);
    // nine disjoint sections of square -3 smoothed with one fiber: a torus of
    // square -9; its area is declared
    MarkedTorus sections;
    sections.label = "T3m9";
    sections.self_int = -9;
    sections.area = ScalarK(12);
    e3.tori.push_back(sections);

    Summand cp2 = rescale(cp2_with_cubic(), ScalarK(4));  // cubic area 12

    SumSpec spec;
    spec.left = e3;
    spec.left_torus = "T3m9";
    spec.right = cp2;
    spec.right_torus = "cubic";
    return symplectic_sum(spec);
}

}  // namespace apw
