#include "scatter/diagram.hpp"

#include <algorithm>
#include <array>

namespace scatter {

std::string to_string(Mode m)
{
    return m == Mode::tropical ? "tropical" : "cone";
}

Mode parse_mode(const std::string& s)
{
    if (s == "tropical") {
        return Mode::tropical;
    }
    if (s == "cone") {
        return Mode::cone;
    }
    throw std::invalid_argument("unknown mode '" + s + "'");
}

Diagram::Diagram(Mode mode, ContextPtr ctx, int order) : mode_(mode), ctx_(std::move(ctx)), order_(order)
{
    if (order_ < 1) {
        throw std::invalid_argument("truncation order must be at least 1");
    }
    if (ctx_->rank != 2) {
        throw std::invalid_argument("diagrams are supported in rank 2 only");
    }
}

static bool positive_multiple(const LatticeVector& x, const LatticeVector& m)
{
    if (!parallel(x, m)) {
        return false;
    }
    for (int i = 0; i < m.rank(); ++i) {
        if (m[i] != 0) {
            return (x[i] > 0) == (m[i] > 0);
        }
    }
    return false;
}

void Diagram::add_wall(Wall w)
{
    if (!w.theta.ctx() || !w.theta.ctx()->same_as(*ctx_)) {
        throw std::invalid_argument("wall theta uses a different backend");
    }
    if (w.theta.order() != order_) {
        w.theta = GroupElement(w.theta.log().with_order(order_));
    }
    if (w.m.rank() != 2 || w.m.is_zero() || w.m.content() != 1 || !ctx_->cone.contains(w.m)) {
        throw std::invalid_argument("wall m must be a primitive nonzero vector of the cone, got " + w.m.str());
    }
    for (const auto& [mb, b] : w.theta.log().blocks()) {
        if (!positive_multiple(mb, w.m)) {
            throw std::invalid_argument("wall log has a block at " + mb.str() + " not on the ray of " +
                                        w.m.str());
        }
    }
    if (mode_ == Mode::tropical) {
        if (w.n.rank() != 2 || w.n.is_zero()) {
            throw std::invalid_argument("tropical wall needs a nonzero n");
        }
        if (pairing(w.m, w.n) != 0) {
            throw std::invalid_argument("tropical wall violates <m, n> = 0");
        }
        if (pairing(w.support.direction, w.n) != 0) {
            throw std::invalid_argument("wall support is not orthogonal to n");
        }
        LatticeVector line = w.n.primitive() * w.n.primitive().lex_sign();
        for (const auto& [mb, nl] : tropical_membership(w.theta.log())) {
            if (!nl || *nl != line) {
                throw std::invalid_argument("wall log block at " + mb.str() + " is not in the n-line of " +
                                            w.n.str());
            }
        }
    } else {
        if (!w.n.coords().empty()) {
            throw std::invalid_argument("cone walls carry no n");
        }
        if (pairing(w.m, w.support.direction) != 0) {
            throw std::invalid_argument("cone wall: m does not annihilate the support");
        }
    }
    walls_.push_back(std::move(w));
}

std::vector<Wall> Diagram::active_walls(int k) const
{
    if (k > order_) {
        throw std::invalid_argument("requested order " + std::to_string(k) + " exceeds the diagram order " +
                                    std::to_string(order_));
    }
    std::vector<Wall> out;
    for (const auto& w : walls_) {
        GroupElement t = w.theta.truncated(k);
        if (!t.is_identity()) {
            Wall c = w;
            c.theta = std::move(t);
            out.push_back(std::move(c));
        }
    }
    return out;
}

Diagram Diagram::truncated(int k) const
{
    Diagram d(mode_, ctx_, k);
    d.walls_ = active_walls(k);
    return d;
}

int crossing_sign(const Wall& w, Mode mode, const Point2& tangent)
{
    if (mode == Mode::tropical) {
        return -sign(dot(tangent, w.n));
    }
    return sign(dot(tangent, w.m));
}

namespace {

struct Crossing {
    Rational s;
    std::size_t wall;
};

void segment_crossings(const Point2& p, const Point2& q, const std::vector<Wall>& walls,
                       std::vector<Crossing>& out)
{
    Point2 d = q - p;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const SupportR2& sup = walls[i].support;
        Point2 u = to_point(sup.direction);
        Rational det = cross(d, u);
        Point2 bp = sup.base - p;
        if (det == 0) {
            if (cross(bp, d) != 0) {
                continue;
            }
            // Collinear carrier: any shared point means the path runs along the wall.
            if (sup.kind == SupportR2::Kind::line || std::max(sup.param(p), sup.param(q)) >= 0) {
                throw GenericityError("path runs along the support of a wall");
            }
            continue;
        }
        Rational s = cross(bp, u) / det;
        Rational r = cross(bp, d) / det;
        if (s < 0 || s > 1) {
            continue;
        }
        if (sup.kind == SupportR2::Kind::ray && r < 0) {
            continue;
        }
        if (s == 0 || s == 1) {
            throw GenericityError("path vertex " + (p + d * s).str() + " lies on a wall");
        }
        if (sup.kind == SupportR2::Kind::ray && r == 0) {
            throw GenericityError("path crosses the base point " + sup.base.str() + " of a wall");
        }
        out.push_back({s, i});
    }
}

} // namespace

GroupElement path_ordered_product(const PiecewisePath& path, const std::vector<Wall>& walls, Mode mode,
                                  const ContextPtr& ctx, int order)
{
    GroupElement total(ctx, order);
    for (std::size_t v = 0; v + 1 < path.vertices.size(); ++v) {
        const Point2& p = path.vertices[v];
        const Point2& q = path.vertices[v + 1];
        if (p == q) {
            continue;
        }
        std::vector<Crossing> cs;
        segment_crossings(p, q, walls, cs);
        std::stable_sort(cs.begin(), cs.end(), [](const Crossing& a, const Crossing& b) { return a.s < b.s; });
        Point2 tangent = q - p;
        for (std::size_t i = 0; i < cs.size();) {
            std::size_t j = i;
            LieElement log(ctx, order);
            while (j < cs.size() && cs[j].s == cs[i].s) {
                const Wall& w = walls[cs[j].wall];
                if (!w.support.collinear(walls[cs[i].wall].support)) {
                    throw GenericityError("path crosses a joint at " + (p + tangent * cs[i].s).str());
                }
                // Collinear walls crossed together commute, so their logs add.
                int e = crossing_sign(w, mode, tangent);
                log += w.theta.log().with_order(order) * Rational(e);
                ++j;
            }
            total = bch_product(GroupElement(log), total);
            i = j;
        }
    }
    return total;
}

GroupElement path_ordered_product(const PiecewisePath& path, const Diagram& d, int order)
{
    return path_ordered_product(path, d.active_walls(order), d.mode(), d.ctx(), order);
}

std::vector<Point2> joints(const std::vector<Wall>& walls)
{
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const SupportR2& a = walls[i].support;
        if (a.kind == SupportR2::Kind::ray) {
            pts.push_back(a.base);
        }
        for (std::size_t j = i + 1; j < walls.size(); ++j) {
            const SupportR2& b = walls[j].support;
            if (a.collinear(b)) {
                continue;
            }
            Intersection x = intersect_supports(a, b);
            if (x.kind == Intersection::Kind::point) {
                pts.push_back(x.point);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<Point2> joints(const Diagram& d, int order)
{
    return joints(d.active_walls(order));
}

namespace {

// Closed segment [p, q] meets the support.
bool segment_meets(const SupportR2& sup, const Point2& p, const Point2& q)
{
    Point2 d = q - p;
    Point2 u = to_point(sup.direction);
    Rational det = cross(d, u);
    Point2 bp = sup.base - p;
    if (det == 0) {
        if (cross(bp, d) != 0) {
            return false;
        }
        if (sup.kind == SupportR2::Kind::line) {
            return true;
        }
        return sup.param(p) >= 0 || sup.param(q) >= 0;
    }
    Rational s = cross(bp, u) / det;
    Rational r = cross(bp, d) / det;
    if (s < 0 || s > 1) {
        return false;
    }
    return sup.kind == SupportR2::Kind::line || r >= 0;
}

bool inside_box(const Point2& x, const Point2& lo, const Point2& hi)
{
    return x.x >= lo.x && x.x <= hi.x && x.y >= lo.y && x.y <= hi.y;
}

} // namespace

PiecewisePath joint_loop(const std::vector<Wall>& walls, const Point2& joint)
{
    // Asymmetric margins keep corners off walls through the joint.
    static const std::array<std::array<Rational, 4>, 4> shapes{{
        {Rational(1), Rational(5, 4), Rational(9, 10), Rational(11, 10)},
        {Rational(7, 8), Rational(1), Rational(13, 12), Rational(5, 6)},
        {Rational(9, 7), Rational(1), Rational(1), Rational(7, 9)},
        {Rational(3, 5), Rational(17, 13), Rational(4, 3), Rational(1)},
    }};
    Rational delta = 1;
    for (int iter = 0; iter < 200; ++iter, delta /= 2) {
        for (const auto& sh : shapes) {
            Point2 lo{joint.x - delta * sh[0], joint.y - delta * sh[2]};
            Point2 hi{joint.x + delta * sh[1], joint.y + delta * sh[3]};
            std::array<Point2, 4> c{lo, Point2{hi.x, lo.y}, hi, Point2{lo.x, hi.y}};
            bool ok = true;
            for (const auto& w : walls) {
                const SupportR2& sup = w.support;
                for (const auto& corner : c) {
                    if (sup.contains(corner)) {
                        ok = false;
                    }
                }
                if (!ok) {
                    break;
                }
                if (sup.contains(joint)) {
                    continue;
                }
                if (sup.kind == SupportR2::Kind::ray && inside_box(sup.base, lo, hi)) {
                    ok = false;
                    break;
                }
                for (int e = 0; e < 4 && ok; ++e) {
                    if (segment_meets(sup, c[e], c[(e + 1) % 4])) {
                        ok = false;
                    }
                }
                if (!ok) {
                    break;
                }
            }
            if (ok) {
                return PiecewisePath{{c[0], c[1], c[2], c[3], c[0]}};
            }
        }
    }
    throw GenericityError("no isolating loop found around joint " + joint.str());
}

ConsistencyReport is_consistent(const Diagram& d, int order, Exec exec)
{
    std::vector<Wall> walls = d.active_walls(order);
    std::vector<Point2> js = joints(walls);
    std::vector<LieElement> logs(js.size());
    std::vector<std::string> errors(js.size());
    const long count = static_cast<long>(js.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < count; ++i) {
        try {
            PiecewisePath loop = joint_loop(walls, js[static_cast<std::size_t>(i)]);
            logs[static_cast<std::size_t>(i)] =
                path_ordered_product(loop, walls, d.mode(), d.ctx(), order).log();
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    ConsistencyReport r;
    r.joints_checked = js.size();
    r.discrepancy = LieElement(d.ctx(), order);
    for (std::size_t i = 0; i < js.size(); ++i) {
        if (!errors[i].empty()) {
            throw GenericityError(errors[i]);
        }
        if (!logs[i].is_zero()) {
            r.consistent = false;
            r.joint = js[i];
            r.discrepancy = logs[i];
            break;
        }
    }
    return r;
}

namespace {

// Transversal segment through x, short enough to cross only walls through x.
PiecewisePath transversal(const std::vector<Wall>& walls, const Point2& x, const LatticeVector& dir)
{
    Point2 nu{Rational(static_cast<long>(-dir[1])), Rational(static_cast<long>(dir[0]))};
    Rational delta = 1;
    for (int iter = 0; iter < 200; ++iter, delta /= 2) {
        Point2 p = x - nu * delta, q = x + nu * delta;
        bool ok = true;
        for (const auto& w : walls) {
            if (w.support.contains(x)) {
                continue;
            }
            if (segment_meets(w.support, p, q)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return PiecewisePath{{p, q}};
        }
    }
    throw GenericityError("no isolating transversal at " + x.str());
}

} // namespace

EquivalenceReport equivalent(const Diagram& a, const Diagram& b, int order)
{
    if (a.mode() != b.mode() || !a.ctx()->same_as(*b.ctx())) {
        throw std::invalid_argument("equivalent: diagrams use different setups");
    }
    std::vector<Wall> wa = a.active_walls(order), wb = b.active_walls(order);
    std::vector<Wall> all = wa;
    all.insert(all.end(), wb.begin(), wb.end());
    EquivalenceReport rep;

    std::vector<SupportR2> carriers;
    for (const auto& w : all) {
        SupportR2 c = SupportR2::line(w.support.base, w.support.direction);
        bool seen = false;
        for (const auto& o : carriers) {
            if (o.same_set(c)) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            carriers.push_back(c);
        }
    }
    auto compare = [&](const PiecewisePath& path, const std::string& what) {
        GroupElement ga = path_ordered_product(path, wa, a.mode(), a.ctx(), order);
        GroupElement gb = path_ordered_product(path, wb, b.mode(), b.ctx(), order);
        ++rep.probes;
        if (!automorphism_equal(ga, gb)) {
            rep.equivalent = false;
            rep.witness = what + ": " + ga.log().str() + " vs " + gb.log().str();
            return false;
        }
        return true;
    };
    for (const auto& line : carriers) {
        std::vector<Rational> cuts;
        for (const auto& w : all) {
            if (w.support.collinear(line)) {
                if (w.support.kind == SupportR2::Kind::ray) {
                    cuts.push_back(line.param(w.support.base));
                }
                continue;
            }
            Intersection x = intersect_supports(line, w.support);
            if (x.kind == Intersection::Kind::point) {
                cuts.push_back(line.param(x.point));
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Rational> samples;
        if (cuts.empty()) {
            samples.push_back(0);
        } else {
            samples.push_back(cuts.front() - 1);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                samples.push_back((cuts[i] + cuts[i + 1]) / 2);
            }
            samples.push_back(cuts.back() + 1);
        }
        for (const auto& s : samples) {
            Point2 x = line.base + to_point(line.direction) * s;
            if (!compare(transversal(all, x, line.direction), "transversal at " + x.str())) {
                return rep;
            }
        }
    }
    for (const auto& j : joints(all)) {
        if (!compare(joint_loop(all, j), "loop around " + j.str())) {
            return rep;
        }
    }
    return rep;
}

} // namespace scatter
