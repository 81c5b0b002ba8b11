#include "scatter/quiver.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace scatter {

QuiverData QuiverData::from_arrows(int r, const std::vector<Arrow>& arrows)
{
    if (r < 1) {
        throw std::invalid_argument("quiver needs at least one node");
    }
    QuiverData q;
    q.r = r;
    q.a.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 0));
    for (const auto& ar : arrows) {
        if (ar.from < 1 || ar.to < 1 || ar.from > r || ar.to > r) {
            throw std::invalid_argument("arrow " + std::to_string(ar.from) + "->" + std::to_string(ar.to) +
                                        " refers to a node outside 1.." + std::to_string(r));
        }
        if (ar.count < 0) {
            throw std::invalid_argument("negative arrow count");
        }
        if (ar.count > 0 && ar.from >= ar.to) {
            throw std::invalid_argument("arrow " + std::to_string(ar.from) + "->" + std::to_string(ar.to) +
                                        " breaks the acyclic node order (arrows must go from lower to higher labels)");
        }
        q.a[static_cast<std::size_t>(ar.from - 1)][static_cast<std::size_t>(ar.to - 1)] += ar.count;
    }
    return q;
}

QuiverData QuiverData::parse(const std::string& text, int r)
{
    std::vector<Arrow> arrows;
    std::stringstream ss(text);
    std::string item;
    int top = 0;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        Arrow a;
        char colon = 0, eq = 0;
        std::istringstream is(item);
        if (!(is >> a.from >> colon >> a.to) || colon != ':') {
            throw std::invalid_argument("bad arrow '" + item + "', expected i:j=count");
        }
        if (is >> eq) {
            if (eq != '=' || !(is >> a.count)) {
                throw std::invalid_argument("bad arrow '" + item + "', expected i:j=count");
            }
        }
        std::string rest;
        if (is >> rest) {
            throw std::invalid_argument("trailing text in arrow '" + item + "'");
        }
        top = std::max({top, a.from, a.to});
        arrows.push_back(a);
    }
    return from_arrows(r > 0 ? r : top, arrows);
}

std::vector<Arrow> QuiverData::arrows() const
{
    std::vector<Arrow> out;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            int c = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (c != 0) {
                out.push_back({i + 1, j + 1, c});
            }
        }
    }
    return out;
}

SkewForm euler_form(const QuiverData& q)
{
    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(q.r),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(q.r), 0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
            rows[i][j] = q.a[j][i] - q.a[i][j];
        }
    }
    return SkewForm(rows);
}

ContextPtr quiver_context(const QuiverData& q)
{
    SkewForm w = euler_form(q);
    if (!w.nondegenerate()) {
        throw std::invalid_argument("quiver Euler form is degenerate");
    }
    return LieContext::quantum(w);
}

LieElement quantum_dilog(const ContextPtr& ctx, int order, const LatticeVector& m, int sign)
{
    LieElement log(ctx, order);
    for (std::int64_t j = 1; ctx->degree(m * j) < order; ++j) {
        long s = (sign < 0 && j % 2 == 1) ? -1 : 1;
        VFrac c = VFrac(frac(s, j)).div_v_difference(static_cast<int>(j));
        log += LieElement::qterm(ctx, order, m * j, Coefficient(c));
    }
    return log;
}

Diagram initial_diagram(const QuiverData& q, int order)
{
    if (q.r != 2) {
        throw std::invalid_argument("quiver diagrams are implemented for two nodes");
    }
    if (order < 1) {
        throw std::invalid_argument("order must be at least 1");
    }
    ContextPtr ctx = quiver_context(q);
    Diagram d(Mode::cone, ctx, order);
    for (int i = 0; i < q.r; ++i) {
        LatticeVector f(q.r);
        f[i] = 1;
        LatticeVector along(q.r);
        along[1 - i] = 1;
        Wall w;
        w.m = f;
        w.support = SupportR2::line(Point2{0, 0}, along);
        w.theta = GroupElement(quantum_dilog(ctx, order, f));
        w.initial = true;
        d.add_wall(w);
    }
    return d;
}

Point2 LambdaLine::at(const Rational& t) const
{
    return Point2{Rational(-1) + t * slopes.at(0), Rational(-1) + t * slopes.at(1)};
}

PiecewisePath LambdaLine::path() const
{
    return PiecewisePath{{at(0), at(1)}};
}

namespace {

bool segment_hits(const Point2& a, const Point2& b, const Point2& p)
{
    if (cross(b - a, p - a) != 0) {
        return false;
    }
    Rational s = (b.x != a.x) ? (p.x - a.x) / (b.x - a.x) : (p.y - a.y) / (b.y - a.y);
    return s >= 0 && s <= 1;
}

bool segment_meets_support(const Point2& a, const Point2& b, const SupportR2& sup)
{
    Point2 d = b - a, u = to_point(sup.direction);
    Rational det = cross(d, u);
    Point2 ab = sup.base - a;
    if (det == 0) {
        if (cross(ab, d) != 0) {
            return false;
        }
        return segment_hits(a, b, sup.base) || sup.contains(a) || sup.contains(b);
    }
    Rational s = cross(ab, u) / det;
    Rational r = cross(ab, d) / det;
    return s >= 0 && s <= 1 && (sup.kind == SupportR2::Kind::line || r >= 0);
}

void check_lambda(const LambdaLine& l)
{
    if (l.slopes.size() != 2) {
        throw std::invalid_argument("lambda line needs two slopes");
    }
    if (!(l.slopes[0] > 1 && l.slopes[1] > l.slopes[0])) {
        throw std::invalid_argument("lambda slopes must satisfy 1 < a_1 < a_2");
    }
}

} // namespace

bool lambda_generic(const Diagram& completed, const LambdaLine& lambda, int order)
{
    check_lambda(lambda);
    std::vector<Wall> walls = completed.active_walls(order);
    Point2 a = lambda.at(0), b = lambda.at(1);
    for (const auto& j : joints(walls)) {
        if (segment_hits(a, b, j)) {
            return false;
        }
    }
    for (const auto& w : walls) {
        if (!w.initial && segment_meets_support(a, b, w.support)) {
            return false;
        }
    }
    return true;
}

LambdaLine draw_lambda(const Diagram& completed, int order, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 256; ++attempt) {
        long p = 1 + static_cast<long>(rng() % 97), q = 1 + static_cast<long>(rng() % 97);
        long den = 101 + static_cast<long>(rng() % 89);
        LambdaLine l{{Rational(1) + frac(std::min(p, q), den), Rational(1) + frac(std::max(p, q), den) + frac(1, 997)}};
        if (lambda_generic(completed, l, order)) {
            return l;
        }
    }
    throw GenericityError("no generic lambda line found");
}

FactorizationReport lambda_factorization_check(const Diagram& completed, const LambdaLine& lambda, int order)
{
    if (completed.mode() != Mode::cone) {
        throw std::invalid_argument("lambda factorization needs a cone-mode diagram");
    }
    if (!lambda_generic(completed, lambda, order)) {
        throw GenericityError("lambda line meets a joint or a non-initial wall");
    }
    FactorizationReport rep;
    rep.lambda = lambda;
    const ContextPtr& ctx = completed.ctx();
    rep.along_lambda = path_ordered_product(lambda.path(), completed, order);
    // Initial walls in node order: theta_1 ... theta_r.
    std::vector<GroupElement> initial(static_cast<std::size_t>(ctx->rank));
    for (const auto& w : completed.walls()) {
        if (!w.initial) {
            continue;
        }
        for (int i = 0; i < ctx->rank; ++i) {
            if (w.m[i] == 1) {
                initial[static_cast<std::size_t>(i)] = w.theta.truncated(order);
            }
        }
    }
    rep.initial_product = product(ctx, order, initial);
    rep.holds = automorphism_equal(rep.along_lambda, rep.initial_product);
    return rep;
}

QuiverThetaValue quiver_theta(const Diagram& completed, const LatticeVector& n, const Point2& q, int order)
{
    for (int i = 0; i < n.rank(); ++i) {
        if (n[i] < 0) {
            throw std::invalid_argument("theta index " + n.str() + " must pair non-negatively with the cone");
        }
    }
    LatticeVector key = initial_key(completed, n);
    QuiverThetaValue out;
    auto lines = enumerate_broken_lines(completed, key, q, order);
    out.broken_lines = lines.size();
    out.value = AlgebraElement(completed.ctx(), order, 0);
    for (const auto& l : lines) {
        out.value.add_term(l.final_key, l.coeff);
    }
    AlgebraElement transport = theta_by_transport(completed, key, q, order);
    if (!(out.value == transport)) {
        throw std::logic_error("broken-line theta " + out.value.str() + " differs from transport " + transport.str());
    }
    return out;
}

} // namespace scatter
