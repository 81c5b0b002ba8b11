#include "scatter/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace scatter {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw SchemaError(path + ": " + msg);
}

const Json& field(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(path + "." + key, "missing field");
    }
    return *it;
}

std::int64_t int_from_json(const Json& j, const std::string& path)
{
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

bool bool_from_json(const Json& j, const std::string& path)
{
    if (!j.is_boolean()) {
        fail(path, "expected a boolean");
    }
    return j.get<bool>();
}

std::string string_from_json(const Json& j, const std::string& path)
{
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

const Json& array_at(const Json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    return j;
}

std::string idx(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

} // namespace

Json to_json(const Rational& r)
{
    return r.get_str();
}

Json to_json(const LatticeVector& v)
{
    Json a = Json::array();
    for (int i = 0; i < v.rank(); ++i) {
        a.push_back(v[i]);
    }
    return a;
}

Json to_json(const Point2& p)
{
    return Json::array({to_json(p.x), to_json(p.y)});
}

Json to_json(const Coefficient& c)
{
    Json terms = Json::array();
    for (const auto& [mono, f] : c.terms()) {
        Json vars = Json::array();
        for (const auto& [var, e] : mono.entries()) {
            vars.push_back(Json::array({var.i, var.j, e}));
        }
        Json num = Json::array();
        for (const auto& [e, q] : f.num().terms()) {
            num.push_back(Json::array({e, to_json(q)}));
        }
        Json den = Json::array();
        for (const auto& [d, p] : f.den()) {
            den.push_back(Json::array({d, p}));
        }
        terms.push_back(Json{{"vars", vars}, {"num", num}, {"den", den}});
    }
    return Json{{"terms", terms}, {"tcap", c.tcap()}};
}

Json to_json(const LieElement& g)
{
    Json blocks = Json::array();
    for (const auto& [m, b] : g.blocks()) {
        Json cs = Json::array();
        for (const auto& c : b) {
            cs.push_back(to_json(c));
        }
        blocks.push_back(Json{{"m", to_json(m)}, {"coeffs", cs}});
    }
    return Json{{"order", g.order()}, {"blocks", blocks}};
}

Json to_json(const AlgebraElement& a)
{
    Json terms = Json::array();
    for (const auto& [key, c] : a.terms()) {
        terms.push_back(Json{{"key", to_json(key)}, {"coeff", to_json(c)}, {"text", c.str()}});
    }
    return Json{{"order", a.order()}, {"floor", a.floor()}, {"terms", terms}};
}

Json to_json(const SupportR2& s)
{
    return Json{{"kind", s.kind == SupportR2::Kind::line ? "line" : "ray"},
                {"base", to_json(s.base)},
                {"direction", to_json(s.direction)}};
}

Json to_json(const Wall& w)
{
    Json j{{"m", to_json(w.m)}, {"support", to_json(w.support)}, {"log", to_json(w.theta.log())},
           {"initial", w.initial}};
    if (w.n.rank() > 0) {
        j["n"] = to_json(w.n);
    }
    if (w.tag) {
        j["tag"] = Json{{"wall", w.tag->wall}, {"subset", w.tag->subset}};
    }
    return j;
}

Json context_json(const LieContext& ctx)
{
    Json j{{"backend", to_string(ctx.backend)}, {"rank", ctx.rank}};
    if (ctx.backend == Backend::quantum) {
        j["omega"] = ctx.omega.rows();
    }
    return j;
}

Json to_json(const Diagram& d)
{
    Json walls = Json::array();
    for (const auto& w : d.walls()) {
        walls.push_back(to_json(w));
    }
    return Json{{"mode", to_string(d.mode())}, {"context", context_json(*d.ctx())}, {"order", d.order()},
                {"walls", walls}};
}

Json to_json(const BrokenLine& l)
{
    Json bends = Json::array();
    for (const auto& b : l.bends) {
        bends.push_back(Json{{"point", to_json(b.point)},
                             {"walls", b.walls},
                             {"key_before", to_json(b.key_before)},
                             {"key_after", to_json(b.key_after)},
                             {"coeff", to_json(b.coeff_after)}});
    }
    return Json{{"initial_key", to_json(l.initial_key)}, {"end", to_json(l.end)}, {"bends", bends},
                {"final_key", to_json(l.final_key)}, {"coeff", to_json(l.coeff)}, {"text", l.coeff.str()}};
}

Json to_json(const TreeInfo& t)
{
    Json j{{"left", t.left}, {"right", t.right}, {"wall", t.wall}, {"k", t.k}, {"m", to_json(t.m)},
           {"degree", t.degree}, {"leaves", t.leaves}, {"mask", t.mask}, {"aut", t.aut},
           {"canon", t.canon}, {"g", to_json(t.g)}};
    if (t.n.rank() > 0) {
        j["n"] = to_json(t.n);
    }
    Json s{{"kind", to_string(t.support.kind)}};
    if (t.support.kind != TreeSupport::Kind::empty) {
        s["base"] = to_json(t.support.base);
    }
    if (t.support.direction.rank() > 0) {
        s["direction"] = to_json(t.support.direction);
    }
    j["support"] = s;
    return j;
}

Json to_json(const TreeFamily& f)
{
    Json trees = Json::array();
    for (const auto& t : f.trees) {
        trees.push_back(to_json(t));
    }
    return Json{{"kind", to_string(f.kind)}, {"mode", to_string(f.mode)}, {"trees", trees}};
}

Json to_json(const QuiverData& q)
{
    Json arrows = Json::array();
    for (const auto& a : q.arrows()) {
        arrows.push_back(Json::array({a.from, a.to, a.count}));
    }
    return Json{{"r", q.r}, {"arrows", arrows}};
}

Rational rational_from_json(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        fail(path, "expected a rational as \"p/q\" or an integer");
    }
    static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
    const std::string s = j.get<std::string>();
    if (!std::regex_match(s, re)) {
        fail(path, "malformed rational '" + s + "'");
    }
    auto slash = s.find('/');
    if (slash != std::string::npos && mpz_class(s.substr(slash + 1)) == 0) {
        fail(path, "zero denominator");
    }
    Rational r(s);
    r.canonicalize();
    return r;
}

LatticeVector vector_from_json(const Json& j, const std::string& path)
{
    array_at(j, path);
    LatticeVector v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<int>(i)] = int_from_json(j[i], idx(path, i));
    }
    return v;
}

Point2 point_from_json(const Json& j, const std::string& path)
{
    array_at(j, path);
    if (j.size() != 2) {
        fail(path, "expected a point [x, y]");
    }
    return Point2{rational_from_json(j[0], idx(path, 0)), rational_from_json(j[1], idx(path, 1))};
}

Coefficient coefficient_from_json(const Json& j, const std::string& path)
{
    if (j.is_number_integer() || j.is_string()) {
        return Coefficient(rational_from_json(j, path));
    }
    int tcap = static_cast<int>(int_from_json(field(j, "tcap", path), path + ".tcap"));
    const Json& terms = array_at(field(j, "terms", path), path + ".terms");
    Coefficient out;
    out.set_tcap(tcap);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string tp = idx(path + ".terms", i);
        NilpotentMonomial mono;
        const Json& vars = array_at(field(terms[i], "vars", tp), tp + ".vars");
        for (std::size_t k = 0; k < vars.size(); ++k) {
            std::string vp = idx(tp + ".vars", k);
            if (!vars[k].is_array() || vars[k].size() != 3) {
                fail(vp, "expected [i, j, exponent]");
            }
            int vi = static_cast<int>(int_from_json(vars[k][0], vp + "[0]"));
            int vj = static_cast<int>(int_from_json(vars[k][1], vp + "[1]"));
            int e = static_cast<int>(int_from_json(vars[k][2], vp + "[2]"));
            if (vi < 1 || vj < 0 || e < 1 || (vj > 0 && e != 1)) {
                fail(vp, "invalid variable");
            }
            mono = mono.mul(vj == 0 ? NilpotentMonomial::t(vi, e) : NilpotentMonomial::u(vi, vj), 0);
        }
        LaurentV num;
        const Json& nj = array_at(field(terms[i], "num", tp), tp + ".num");
        for (std::size_t k = 0; k < nj.size(); ++k) {
            std::string np = idx(tp + ".num", k);
            if (!nj[k].is_array() || nj[k].size() != 2) {
                fail(np, "expected [exponent, rational]");
            }
            num += LaurentV::monomial(static_cast<int>(int_from_json(nj[k][0], np + "[0]")),
                                      rational_from_json(nj[k][1], np + "[1]"));
        }
        VFrac::Den den;
        const Json& dj = array_at(field(terms[i], "den", tp), tp + ".den");
        for (std::size_t k = 0; k < dj.size(); ++k) {
            std::string dp = idx(tp + ".den", k);
            if (!dj[k].is_array() || dj[k].size() != 2) {
                fail(dp, "expected [cyclotomic index, power]");
            }
            int d = static_cast<int>(int_from_json(dj[k][0], dp + "[0]"));
            int p = static_cast<int>(int_from_json(dj[k][1], dp + "[1]"));
            if (d < 1 || p < 1) {
                fail(dp, "invalid cyclotomic factor");
            }
            den.emplace_back(d, p);
        }
        std::sort(den.begin(), den.end());
        out += Coefficient::monomial(mono, VFrac(num, den), tcap);
    }
    return out;
}

ContextPtr context_from_json(const Json& j, const std::string& path)
{
    Backend b;
    try {
        b = parse_backend(string_from_json(field(j, "backend", path), path + ".backend"));
    } catch (const std::invalid_argument& e) {
        fail(path + ".backend", e.what());
    }
    int rank = static_cast<int>(int_from_json(field(j, "rank", path), path + ".rank"));
    if (rank < 1 || rank > 8) {
        fail(path + ".rank", "rank must be between 1 and 8");
    }
    if (b == Backend::classical) {
        return LieContext::classical(rank);
    }
    const Json& rows = array_at(field(j, "omega", path), path + ".omega");
    if (static_cast<int>(rows.size()) != rank) {
        fail(path + ".omega", "expected a rank x rank matrix");
    }
    std::vector<std::vector<std::int64_t>> a;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        LatticeVector row = vector_from_json(rows[i], idx(path + ".omega", i));
        if (row.rank() != rank) {
            fail(idx(path + ".omega", i), "expected a row of length " + std::to_string(rank));
        }
        a.emplace_back();
        for (int k = 0; k < rank; ++k) {
            a.back().push_back(row[k]);
        }
    }
    try {
        return LieContext::quantum(SkewForm(a));
    } catch (const std::invalid_argument& e) {
        fail(path + ".omega", e.what());
    }
}

LieElement lie_from_json(const Json& j, const ContextPtr& ctx, const std::string& path)
{
    int order = static_cast<int>(int_from_json(field(j, "order", path), path + ".order"));
    if (order < 1) {
        fail(path + ".order", "order must be at least 1");
    }
    LieElement g(ctx, order);
    const Json& blocks = array_at(field(j, "blocks", path), path + ".blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::string bp = idx(path + ".blocks", i);
        LatticeVector m = vector_from_json(field(blocks[i], "m", bp), bp + ".m");
        const Json& cs = array_at(field(blocks[i], "coeffs", bp), bp + ".coeffs");
        Block b;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            b.push_back(coefficient_from_json(cs[k], idx(bp + ".coeffs", k)));
        }
        try {
            g.add_block(m, b);
        } catch (const std::exception& e) {
            fail(bp, e.what());
        }
    }
    return g;
}

AlgebraElement algebra_from_json(const Json& j, const ContextPtr& ctx, const std::string& path)
{
    int order = static_cast<int>(int_from_json(field(j, "order", path), path + ".order"));
    std::int64_t floor = int_from_json(field(j, "floor", path), path + ".floor");
    AlgebraElement a(ctx, order, floor);
    const Json& terms = array_at(field(j, "terms", path), path + ".terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string tp = idx(path + ".terms", i);
        LatticeVector key = vector_from_json(field(terms[i], "key", tp), tp + ".key");
        if (key.rank() != ctx->key_size()) {
            fail(tp + ".key", "wrong key length");
        }
        a.add_term(key, coefficient_from_json(field(terms[i], "coeff", tp), tp + ".coeff"));
    }
    return a;
}

SupportR2 support_from_json(const Json& j, const std::string& path)
{
    std::string kind = string_from_json(field(j, "kind", path), path + ".kind");
    Point2 base = point_from_json(field(j, "base", path), path + ".base");
    LatticeVector dir = vector_from_json(field(j, "direction", path), path + ".direction");
    if (dir.rank() != 2 || dir.is_zero()) {
        fail(path + ".direction", "expected a nonzero vector of length 2");
    }
    if (kind == "line") {
        return SupportR2::line(base, dir);
    }
    if (kind == "ray") {
        return SupportR2::ray(base, dir);
    }
    fail(path + ".kind", "expected \"line\" or \"ray\"");
}

namespace {

// log f for f = 1 + sum_k c_k z^{k m}, as a classical tropical wall log along n.
LieElement log_of_wall_function(const ContextPtr& ctx, int order, const LatticeVector& m, const LatticeVector& n,
                                const std::vector<std::pair<std::int64_t, Coefficient>>& f)
{
    std::int64_t dm = ctx->degree(m);
    if (dm <= 0) {
        fail("$", "wall exponent must have positive degree");
    }
    std::int64_t top = (order - 1) / dm; // powers z^{k m} with k <= top survive
    std::vector<Coefficient> x(static_cast<std::size_t>(top + 1)), power(static_cast<std::size_t>(top + 1)),
        log(static_cast<std::size_t>(top + 1));
    for (const auto& [k, c] : f) {
        if (k >= 1 && k <= top) {
            x[static_cast<std::size_t>(k)] += c;
        }
    }
    power = x;
    for (std::int64_t j = 1; j <= top; ++j) {
        Rational s(j % 2 == 1 ? 1 : -1, j);
        for (std::int64_t k = 0; k <= top; ++k) {
            log[static_cast<std::size_t>(k)] += power[static_cast<std::size_t>(k)] * s;
        }
        std::vector<Coefficient> next(static_cast<std::size_t>(top + 1));
        for (std::int64_t a = 1; a <= top; ++a) {
            for (std::int64_t b = 1; a + b <= top; ++b) {
                next[static_cast<std::size_t>(a + b)] +=
                    power[static_cast<std::size_t>(a)] * x[static_cast<std::size_t>(b)];
            }
        }
        power = next;
    }
    LieElement g(ctx, order);
    for (std::int64_t k = 1; k <= top; ++k) {
        if (!log[static_cast<std::size_t>(k)].is_zero()) {
            g += LieElement::term(ctx, order, m * k, n, log[static_cast<std::size_t>(k)]);
        }
    }
    return g;
}

} // namespace

Diagram diagram_from_json(const Json& j, const std::string& path)
{
    Mode mode;
    try {
        mode = parse_mode(string_from_json(field(j, "mode", path), path + ".mode"));
    } catch (const std::invalid_argument& e) {
        fail(path + ".mode", e.what());
    }
    ContextPtr ctx = context_from_json(field(j, "context", path), path + ".context");
    int order = static_cast<int>(int_from_json(field(j, "order", path), path + ".order"));
    if (order < 1) {
        fail(path + ".order", "order must be at least 1");
    }
    Diagram d;
    try {
        d = Diagram(mode, ctx, order);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    const Json& walls = array_at(field(j, "walls", path), path + ".walls");
    for (std::size_t i = 0; i < walls.size(); ++i) {
        std::string wp = idx(path + ".walls", i);
        const Json& wj = walls[i];
        Wall w;
        w.m = vector_from_json(field(wj, "m", wp), wp + ".m");
        if (wj.contains("n")) {
            w.n = vector_from_json(wj["n"], wp + ".n");
        }
        w.support = support_from_json(field(wj, "support", wp), wp + ".support");
        if (wj.contains("log")) {
            w.theta = GroupElement(lie_from_json(wj["log"], ctx, wp + ".log"));
        } else if (wj.contains("function")) {
            if (mode != Mode::tropical || ctx->backend != Backend::classical || w.n.rank() == 0) {
                fail(wp + ".function", "wall functions need a classical tropical wall with n");
            }
            const Json& fj = array_at(wj["function"], wp + ".function");
            std::vector<std::pair<std::int64_t, Coefficient>> f;
            for (std::size_t k = 0; k < fj.size(); ++k) {
                std::string fp = idx(wp + ".function", k);
                f.emplace_back(int_from_json(field(fj[k], "k", fp), fp + ".k"),
                               coefficient_from_json(field(fj[k], "coeff", fp), fp + ".coeff"));
            }
            w.theta = GroupElement(log_of_wall_function(ctx, order, w.m, w.n, f));
        } else {
            fail(wp, "missing field log (or function)");
        }
        w.initial = wj.contains("initial") ? bool_from_json(wj["initial"], wp + ".initial") : true;
        if (wj.contains("tag")) {
            const Json& tj = wj["tag"];
            PerturbationTag tag;
            tag.wall = static_cast<int>(int_from_json(field(tj, "wall", wp + ".tag"), wp + ".tag.wall"));
            const Json& sj = array_at(field(tj, "subset", wp + ".tag"), wp + ".tag.subset");
            for (std::size_t k = 0; k < sj.size(); ++k) {
                tag.subset.push_back(static_cast<int>(int_from_json(sj[k], idx(wp + ".tag.subset", k))));
            }
            w.tag = tag;
        }
        try {
            d.add_wall(w);
        } catch (const std::exception& e) {
            fail(wp, e.what());
        }
    }
    return d;
}

QuiverData quiver_from_json(const Json& j, const std::string& path)
{
    int r = static_cast<int>(int_from_json(field(j, "r", path), path + ".r"));
    const Json& arrows = array_at(field(j, "arrows", path), path + ".arrows");
    std::vector<Arrow> list;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        std::string ap = idx(path + ".arrows", i);
        if (!arrows[i].is_array() || arrows[i].size() != 3) {
            fail(ap, "expected [i, j, count]");
        }
        list.push_back({static_cast<int>(int_from_json(arrows[i][0], ap + "[0]")),
                        static_cast<int>(int_from_json(arrows[i][1], ap + "[1]")),
                        static_cast<int>(int_from_json(arrows[i][2], ap + "[2]"))});
    }
    try {
        return QuiverData::from_arrows(r, list);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw SchemaError(path + ": cannot open file");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

namespace {

struct Box {
    double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
    void add(double x, double y)
    {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    return s == "-0.0000" ? "0.0000" : s;
}

} // namespace

std::string render_svg(const Diagram& d, const SvgOptions& opt)
{
    if (d.ctx()->rank != 2) {
        throw std::invalid_argument("rendering needs rank 2");
    }
    int order = opt.order > 0 ? opt.order : d.order();
    std::vector<Wall> walls = d.active_walls(order);
    std::vector<Point2> js = joints(walls);
    Box box;
    for (const auto& w : walls) {
        box.add(w.support.base.x.get_d(), w.support.base.y.get_d());
    }
    for (const auto& p : js) {
        box.add(p.x.get_d(), p.y.get_d());
    }
    for (const auto& l : opt.lines) {
        box.add(l.end.x.get_d(), l.end.y.get_d());
        for (const auto& b : l.bends) {
            box.add(b.point.x.get_d(), b.point.y.get_d());
        }
    }
    double pad = 0.5 * std::max(box.x1 - box.x0, box.y1 - box.y0);
    box.x0 -= pad;
    box.y0 -= pad;
    box.x1 += pad;
    box.y1 += pad;
    const double reach = 4 * std::max(box.x1 - box.x0, box.y1 - box.y0);
    const double size = 600;
    const double scale = size / std::max(box.x1 - box.x0, box.y1 - box.y0);
    auto sx = [&](double x) { return (x - box.x0) * scale; };
    auto sy = [&](double y) { return (box.y1 - y) * scale; };
    auto clip = [&](double ax, double ay, double bx, double by, std::string& out) {
        // Liang-Barsky clipping of segment a-b against the box.
        double t0 = 0, t1 = 1, dx = bx - ax, dy = by - ay;
        const double p[4] = {-dx, dx, -dy, dy};
        const double q[4] = {ax - box.x0, box.x1 - ax, ay - box.y0, box.y1 - ay};
        for (int i = 0; i < 4; ++i) {
            if (p[i] == 0) {
                if (q[i] < 0) {
                    return false;
                }
                continue;
            }
            double r = q[i] / p[i];
            if (p[i] < 0) {
                t0 = std::max(t0, r);
            } else {
                t1 = std::min(t1, r);
            }
        }
        if (t0 > t1) {
            return false;
        }
        out = num(sx(ax + t0 * dx)) + "," + num(sy(ay + t0 * dy)) + " " + num(sx(ax + t1 * dx)) + "," +
              num(sy(ay + t1 * dy));
        return true;
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    s << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    std::string seg;
    if (clip(box.x0, 0, box.x1, 0, seg)) {
        s << "<line class=\"axis\" x1=\"" << num(sx(box.x0)) << "\" y1=\"" << num(sy(0)) << "\" x2=\""
          << num(sx(box.x1)) << "\" y2=\"" << num(sy(0)) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    }
    if (clip(0, box.y0, 0, box.y1, seg)) {
        s << "<line class=\"axis\" x1=\"" << num(sx(0)) << "\" y1=\"" << num(sy(box.y0)) << "\" x2=\""
          << num(sx(0)) << "\" y2=\"" << num(sy(box.y1)) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
    }
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const SupportR2& sup = walls[i].support;
        double bx = sup.base.x.get_d(), by = sup.base.y.get_d();
        double ux = static_cast<double>(sup.direction[0]), uy = static_cast<double>(sup.direction[1]);
        double un = std::hypot(ux, uy);
        ux *= reach / un;
        uy *= reach / un;
        double ax = sup.kind == SupportR2::Kind::line ? bx - ux : bx, ay = sup.kind == SupportR2::Kind::line ? by - uy : by;
        std::string pts = "";
        clip(ax, ay, bx + ux, by + uy, pts);
        s << "<polyline class=\"wall\" data-index=\"" << i << "\" data-m=\"" << walls[i].m.str() << "\" points=\""
          << pts << "\" fill=\"none\" stroke=\"" << (walls[i].initial ? "#1f4e9c" : "#c0392b")
          << "\" stroke-width=\"2\"/>\n";
    }
    for (const auto& p : js) {
        s << "<circle class=\"joint\" cx=\"" << num(sx(p.x.get_d())) << "\" cy=\"" << num(sy(p.y.get_d()))
          << "\" r=\"4\" fill=\"black\"/>\n";
    }
    if (opt.trees != nullptr) {
        for (std::size_t i = 0; i < opt.trees->trees.size(); ++i) {
            const TreeInfo& t = opt.trees->trees[i];
            if (t.g.is_zero() || t.is_leaf() ||
                (t.support.kind != TreeSupport::Kind::ray && t.support.kind != TreeSupport::Kind::line)) {
                continue;
            }
            SupportR2 sup = t.support.as_support();
            double bx = sup.base.x.get_d(), by = sup.base.y.get_d();
            double ux = static_cast<double>(sup.direction[0]), uy = static_cast<double>(sup.direction[1]);
            double un = std::hypot(ux, uy);
            std::string pts;
            clip(bx, by, bx + ux * reach / un, by + uy * reach / un, pts);
            s << "<polyline class=\"tree\" data-index=\"" << i << "\" points=\"" << pts
              << "\" fill=\"none\" stroke=\"#27ae60\" stroke-width=\"1\" stroke-dasharray=\"2 2\"/>\n";
        }
    }
    for (std::size_t i = 0; i < opt.lines.size(); ++i) {
        const BrokenLine& l = opt.lines[i];
        std::vector<Point2> pts;
        for (const auto& b : l.bends) {
            pts.push_back(b.point);
        }
        pts.push_back(l.end);
        LatticeVector v0 = velocity(d, l.initial_key);
        double vx = static_cast<double>(v0[0]), vy = static_cast<double>(v0[1]);
        double vn = std::hypot(vx, vy);
        double fx = pts.front().x.get_d() - vx * reach / vn, fy = pts.front().y.get_d() - vy * reach / vn;
        std::string first;
        clip(fx, fy, pts.front().x.get_d(), pts.front().y.get_d(), first);
        s << "<polyline class=\"broken-line\" data-index=\"" << i << "\" points=\""
          << first.substr(0, first.find(' '));
        for (const auto& p : pts) {
            s << " " << num(sx(p.x.get_d())) << "," << num(sy(p.y.get_d()));
        }
        s << "\" fill=\"none\" stroke=\"#8e44ad\" stroke-width=\"1.5\"/>\n";
        for (std::size_t b = 0; b < l.bends.size(); ++b) {
            s << "<text class=\"bend\" x=\"" << num(sx(l.bends[b].point.x.get_d()) + 4) << "\" y=\""
              << num(sy(l.bends[b].point.y.get_d()) - 4) << "\" font-size=\"10\">" << i << "." << b + 1 << "</text>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

} // namespace scatter
