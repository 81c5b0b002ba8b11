#include "scatter/completion.hpp"
#include "scatter/io.hpp"
#include "scatter/quiver.hpp"
#include "scatter/theta.hpp"
#include "scatter/trees.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

using namespace scatter;

namespace {

// Mathematical failure (exit 1) as opposed to bad input (exit 2).
struct MathFailure {
    Json report;
};

struct Options {
    std::string in;
    std::string other;
    std::string out;
    std::string svg;
    std::string mode;
    std::string backend;
    int order = 0;
    std::uint64_t seed = 1;
    bool serial = false;
    int l = 2;
    std::string kind = "weighted";
    std::string m;
    std::string q;
    std::string arrows;
    std::string action = "complete";
    bool transport = false;
};

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

LatticeVector parse_vector(const std::string& s, const std::string& flag)
{
    auto parts = split(s, ',');
    if (parts.empty()) {
        throw SchemaError(flag + ": expected comma-separated integers");
    }
    LatticeVector v(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
            std::size_t used = 0;
            v[static_cast<int>(i)] = std::stoll(parts[i], &used);
            if (used != parts[i].size()) {
                throw std::invalid_argument(parts[i]);
            }
        } catch (const std::exception&) {
            throw SchemaError(flag + ": bad integer '" + parts[i] + "'");
        }
    }
    return v;
}

Point2 parse_point(const std::string& s, const std::string& flag)
{
    auto parts = split(s, ',');
    if (parts.size() != 2) {
        throw SchemaError(flag + ": expected x,y");
    }
    return Point2{rational_from_json(parts[0], flag + ".x"), rational_from_json(parts[1], flag + ".y")};
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(o.out, text);
    }
}

void emit_svg(const Options& o, const std::string& svg)
{
    if (!o.svg.empty()) {
        write_file_atomic(o.svg, svg);
    }
}

Exec exec_of(const Options& o)
{
    return o.serial ? Exec::serial : Exec::parallel;
}

Diagram load(const Options& o, const std::string& path)
{
    if (path.empty()) {
        throw SchemaError("--in: required");
    }
    Diagram d = diagram_from_json(read_json_file(path));
    if (!o.mode.empty() && parse_mode(o.mode) != d.mode()) {
        throw SchemaError("--mode: diagram is in " + to_string(d.mode()) + " mode");
    }
    if (!o.backend.empty() && parse_backend(o.backend) != d.ctx()->backend) {
        throw SchemaError("--backend: diagram uses the " + to_string(d.ctx()->backend) + " backend");
    }
    return d;
}

int order_of(const Options& o, const Diagram& d)
{
    int k = o.order > 0 ? o.order : d.order();
    if (k > d.order()) {
        throw SchemaError("--order: exceeds the diagram order " + std::to_string(d.order()));
    }
    return k;
}

Json consistency_json(const ConsistencyReport& r)
{
    Json j{{"consistent", r.consistent}, {"joints_checked", r.joints_checked}};
    if (r.joint) {
        j["joint"] = to_json(*r.joint);
        j["discrepancy"] = to_json(r.discrepancy);
        j["discrepancy_text"] = r.discrepancy.str();
    }
    return j;
}

void cmd_complete(const Options& o)
{
    Diagram d = load(o, o.in);
    int k = order_of(o, d);
    Diagram c;
    try {
        c = complete(d, k, exec_of(o));
    } catch (const CompletionError& e) {
        throw MathFailure{Json{{"error", e.what()}}};
    }
    emit(o, dump(to_json(c)));
    emit_svg(o, render_svg(c));
}

void cmd_check(const Options& o)
{
    Diagram d = load(o, o.in);
    ConsistencyReport r = is_consistent(d, order_of(o, d), exec_of(o));
    if (!r.consistent) {
        throw MathFailure{consistency_json(r)};
    }
    emit(o, dump(consistency_json(r)));
}

void cmd_equivalent(const Options& o)
{
    Diagram a = load(o, o.in);
    Diagram b = load(o, o.other);
    int k = o.order > 0 ? o.order : std::min(a.order(), b.order());
    EquivalenceReport r = equivalent(a, b, k);
    Json j{{"equivalent", r.equivalent}, {"probes", r.probes}};
    if (!r.equivalent) {
        j["witness"] = r.witness;
        throw MathFailure{j};
    }
    emit(o, dump(j));
}

void cmd_perturb(const Options& o)
{
    Diagram d = load(o, o.in);
    PerturbResult r = perturb(d, o.l, o.seed, order_of(o, d));
    Json offsets = Json::array();
    for (const auto& x : r.offsets) {
        offsets.push_back(to_json(x));
    }
    emit(o, dump(Json{{"diagram", to_json(r.diagram)}, {"offsets", offsets}, {"attempts", r.attempts},
                      {"seed", o.seed}}));
    emit_svg(o, render_svg(r.diagram));
}

void cmd_trees(const Options& o)
{
    Diagram d = load(o, o.in);
    int k = order_of(o, d);
    TreeFamily f = enumerate_trees(d, parse_tree_kind(o.kind), k);
    emit(o, dump(to_json(f)));
    SvgOptions so;
    so.trees = &f;
    emit_svg(o, render_svg(d, so));
}

void cmd_theta(const Options& o, bool lines_only)
{
    Diagram d = load(o, o.in);
    int k = order_of(o, d);
    LatticeVector key = initial_key(d, parse_vector(o.m, "--m"));
    Point2 q = parse_point(o.q, "--q");
    std::vector<BrokenLine> lines = enumerate_broken_lines(d, key, q, k, exec_of(o));
    SvgOptions so;
    so.lines = lines;
    if (lines_only) {
        Json arr = Json::array();
        for (const auto& l : lines) {
            arr.push_back(to_json(l));
        }
        emit(o, dump(Json{{"broken_lines", arr}}));
    } else {
        AlgebraElement th = theta(d, key, q, k, exec_of(o));
        Json j{{"theta", to_json(th)}, {"broken_lines", lines.size()}, {"text", th.str()}};
        if (o.transport) {
            AlgebraElement tr = theta_by_transport(d, key, q, k);
            j["transport"] = to_json(tr);
            j["agree"] = tr == th;
            if (!(tr == th)) {
                throw MathFailure{j};
            }
        }
        emit(o, dump(j));
    }
    emit_svg(o, render_svg(d, so));
}

void cmd_quiver(const Options& o)
{
    QuiverData qd;
    if (!o.arrows.empty()) {
        qd = QuiverData::parse(o.arrows);
    } else if (!o.in.empty()) {
        qd = quiver_from_json(read_json_file(o.in));
    } else {
        throw SchemaError("--arrows: required (or --in quiver.json)");
    }
    if (o.order < 1) {
        throw SchemaError("--order: required for quiver");
    }
    Diagram c;
    try {
        c = complete(initial_diagram(qd, o.order), o.order, exec_of(o));
    } catch (const CompletionError& e) {
        throw MathFailure{Json{{"error", e.what()}}};
    }
    if (o.action == "complete") {
        emit(o, dump(Json{{"quiver", to_json(qd)}, {"diagram", to_json(c)}}));
        emit_svg(o, render_svg(c));
    } else if (o.action == "factorize") {
        LambdaLine l = draw_lambda(c, o.order, o.seed);
        FactorizationReport r = lambda_factorization_check(c, l, o.order);
        Json j{{"holds", r.holds},
               {"slopes", Json::array({to_json(l.slopes[0]), to_json(l.slopes[1])})},
               {"along_lambda", to_json(r.along_lambda.log())},
               {"initial_product", to_json(r.initial_product.log())}};
        if (!r.holds) {
            throw MathFailure{j};
        }
        emit(o, dump(j));
    } else if (o.action == "theta") {
        LatticeVector n = parse_vector(o.m, "--n");
        Point2 q = parse_point(o.q, "--q");
        QuiverThetaValue v = quiver_theta(c, n, q, o.order);
        emit(o, dump(Json{{"theta", to_json(v.value)}, {"broken_lines", v.broken_lines}, {"text", v.value.str()}}));
    } else {
        throw SchemaError("action: expected complete, theta or factorize");
    }
}

void cmd_plot(const Options& o)
{
    Diagram d = load(o, o.in);
    SvgOptions so;
    so.order = order_of(o, d);
    if (!o.m.empty()) {
        LatticeVector key = initial_key(d, parse_vector(o.m, "--m"));
        Point2 q = parse_point(o.q, "--q");
        so.lines = enumerate_broken_lines(d, key, q, so.order, exec_of(o));
    }
    std::string svg = render_svg(d, so);
    if (o.svg.empty()) {
        emit(o, svg);
    } else {
        write_file_atomic(o.svg, svg);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Consistent scattering diagrams, tropical trees, broken lines and theta functions"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool input = true) {
        if (input) {
            c->add_option("--in", o.in, "input JSON");
        }
        c->add_option("--out", o.out, "output JSON (stdout if omitted)");
        c->add_option("--order", o.order, "truncation order")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "seed for randomized choices");
        c->add_option("--mode", o.mode, "expected diagram mode")->check(CLI::IsMember({"tropical", "cone"}));
        c->add_option("--backend", o.backend, "expected backend")->check(CLI::IsMember({"classical", "quantum"}));
        c->add_option("--svg", o.svg, "also write an SVG rendering");
        c->add_flag("--serial", o.serial, "use the serial kernels");
    };
    auto* complete_cmd = app.add_subcommand("complete", "consistent completion");
    common(complete_cmd);
    auto* check_cmd = app.add_subcommand("check-consistency", "loop check around every joint");
    common(check_cmd);
    auto* eq_cmd = app.add_subcommand("equivalent", "compare two diagrams");
    common(eq_cmd);
    eq_cmd->add_option("--other", o.other, "second diagram")->required();
    auto* perturb_cmd = app.add_subcommand("perturb", "generic perturbation over l copies");
    common(perturb_cmd);
    perturb_cmd->add_option("--l", o.l, "number of copies")->check(CLI::Range(1, 6));
    auto* trees_cmd = app.add_subcommand("trees", "enumerate tropical trees");
    common(trees_cmd);
    trees_cmd->add_option("--kind", o.kind, "labeled or weighted")->check(CLI::IsMember({"labeled", "weighted"}));
    auto* theta_cmd = app.add_subcommand("theta", "theta function at a point");
    common(theta_cmd);
    theta_cmd->add_option("--m", o.m, "index, e.g. 1,0")->required();
    theta_cmd->add_option("--q", o.q, "endpoint, e.g. 3/2,-1")->required();
    theta_cmd->add_flag("--transport", o.transport, "cross-check against transport");
    auto* lines_cmd = app.add_subcommand("broken-lines", "enumerate broken lines");
    common(lines_cmd);
    lines_cmd->add_option("--m", o.m, "index, e.g. 1,0")->required();
    lines_cmd->add_option("--q", o.q, "endpoint")->required();
    auto* quiver_cmd = app.add_subcommand("quiver", "acyclic quiver diagrams");
    common(quiver_cmd);
    quiver_cmd->add_option("action", o.action, "complete, theta or factorize")
        ->check(CLI::IsMember({"complete", "theta", "factorize"}));
    quiver_cmd->add_option("--arrows", o.arrows, "arrows, e.g. 1:2=1");
    quiver_cmd->add_option("--n", o.m, "theta index in N");
    quiver_cmd->add_option("--q", o.q, "endpoint in N_R");
    auto* plot_cmd = app.add_subcommand("plot", "SVG rendering");
    common(plot_cmd);
    plot_cmd->add_option("--m", o.m, "overlay broken lines for this index");
    plot_cmd->add_option("--q", o.q, "broken line endpoint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*complete_cmd) {
            cmd_complete(o);
        } else if (*check_cmd) {
            cmd_check(o);
        } else if (*eq_cmd) {
            cmd_equivalent(o);
        } else if (*perturb_cmd) {
            cmd_perturb(o);
        } else if (*trees_cmd) {
            cmd_trees(o);
        } else if (*theta_cmd) {
            cmd_theta(o, false);
        } else if (*lines_cmd) {
            cmd_theta(o, true);
        } else if (*quiver_cmd) {
            cmd_quiver(o);
        } else if (*plot_cmd) {
            if (!o.m.empty() && o.q.empty()) {
                throw SchemaError("--q: required with --m");
            }
            cmd_plot(o);
        }
    } catch (const MathFailure& f) {
        std::cout << dump(f.report);
        return 1;
    } catch (const std::logic_error& e) {
        // invalid_argument and schema problems derive from logic_error or SchemaError
        if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GenericityError& e) {
        std::cerr << "error: non-generic input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
