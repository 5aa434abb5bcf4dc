#include "hsum/cli.hpp"

#include "hsum/factorize.hpp"
#include "hsum/holonomic.hpp"
#include "hsum/matrix.hpp"
#include "hsum/petkovsek.hpp"
#include "hsum/zeilberger.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <optional>
#include <sstream>

namespace hsum {

namespace {

using json = nlohmann::ordered_json;

struct Request {
    std::string command, input, rhs;
    std::optional<std::string> var, k, n, x, func;
    int order_max = 6;
    int order = 6;
    bool expanded = false;
    std::string format = "text";

    std::string pick(const std::optional<std::string>& v, const std::string& dflt) const { return v ? *v : dflt; }
};

struct Result {
    std::string status = "ok";
    std::string text;
    json details = json::object();
    std::vector<std::string> warnings;
};

std::string fstr(const RatFunc& r, const std::vector<std::string>& pr = {}) { return to_expr_factored(r, pr).str(); }

json poly_list(const std::vector<MPoly>& c)
{
    json a = json::array();
    for (auto& p : c) a.push_back(to_expr(p).str());
    return a;
}

json rf_list(const std::vector<RatFunc>& c, const std::vector<std::string>& pr = {})
{
    json a = json::array();
    for (auto& r : c) a.push_back(fstr(r, pr));
    return a;
}

Result recurrence_result(const Recurrence& re, bool expanded)
{
    Result r;
    r.text = expanded ? re.str_expanded() : re.str();
    r.details["recurrence"] = re.str();
    r.details["recurrence_expanded"] = re.str_expanded();
    r.details["function"] = re.func;
    r.details["variable"] = re.var;
    r.details["order"] = re.order();
    r.details["coefficients"] = poly_list(re.coeffs);
    return r;
}

Result de_result(const DiffEq& de, bool expanded)
{
    Result r;
    r.text = expanded ? de.str_expanded() : de.str();
    r.details["equation"] = de.str();
    r.details["equation_expanded"] = de.str_expanded();
    r.details["function"] = de.func;
    r.details["variable"] = de.var;
    r.details["order"] = de.order();
    r.details["coefficients"] = poly_list(de.coeffs);
    return r;
}

// top-level comma split of "[a, b, ...]"
std::vector<std::string> split_list(const std::string& text)
{
    std::string s = text;
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    if (b == std::string::npos || s[b] != '[' || s[e] != ']') throw ParseError("expected a bracketed list", b == std::string::npos ? 0 : b, {"["});
    s = s.substr(b + 1, e - b - 1);
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.find_first_not_of(" \t\n") != std::string::npos || !out.empty()) out.push_back(cur);
    return out;
}

Matrix parse_matrix(const std::string& text)
{
    auto rows = split_list(text);
    if (rows.empty()) throw ParseError("empty matrix", 0, {"["});
    std::vector<std::vector<std::string>> cells;
    for (auto& r : rows) cells.push_back(split_list(r));
    Matrix m(cells.size(), cells[0].size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].size() != m.cols()) throw ParseError("rows have different lengths", 0, {});
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = eval_rf(parse(cells[i][j]));
    }
    return m;
}

std::string vec_str(const std::vector<RatFunc>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fstr(v[i]);
    return s + "]";
}

std::string factor_str(const MPoly& p)
{
    return (p.used_vars().size() <= 1 ? factor_univariate(p) : factor_pretty(p)).str();
}

json factor_json(const MPoly& p)
{
    Factorization f = p.used_vars().size() <= 1 ? factor_univariate(p) : factor_pretty(p);
    json a = json::array();
    for (auto& [q, m] : f.factors) a.push_back({{"factor", to_expr(q).str()}, {"multiplicity", m}});
    return {{"content", f.content.get_str()}, {"factors", a}};
}

Result cmd_gosper(const Request& q)
{
    std::string k = q.pick(q.var ? q.var : q.k, "k");
    GosperResult g = gosper(parse(q.input), k);
    Result r;
    r.details["variable"] = k;
    if (!g.found) {
        r.status = "no_hypergeometric_antidifference";
        r.text = "no hypergeometric term antidifference exists";
        return r;
    }
    r.text = g.antidifference.str();
    r.details["antidifference"] = r.text;
    r.details["multiplier"] = fstr(g.multiplier, {k});
    r.details["certificate"] = {{"p", fstr(RatFunc(g.pqr.p), {k})},
                                {"q", fstr(RatFunc(g.pqr.q), {k})},
                                {"r", fstr(RatFunc(g.pqr.r), {k})},
                                {"f", fstr(g.f, {k})}};
    r.details["degree_bound"] = g.bound;
    return r;
}

Result cmd_sumrecursion(const Request& q)
{
    std::string k = q.pick(q.k ? q.k : q.var, "k"), n = q.pick(q.n, "n");
    SumRecursion s = sum_recursion(parse(q.input), k, n, q.pick(q.func, "S"), q.order_max);
    Result r = recurrence_result(s.rec, q.expanded);
    r.details["sigma"] = rf_list(s.sigma, {n});
    r.details["certificate"] = fstr(s.multiplier, {k, n});
    return r;
}

Result cmd_closedform(const Request& q)
{
    std::string k = q.pick(q.k ? q.k : q.var, "k"), n = q.pick(q.n, "n");
    ClosedForm c = closedform(parse(q.input), k, n, q.order_max);
    Result r;
    r.text = c.value.str();
    r.details["value"] = r.text;
    r.details["ratio"] = fstr(c.ratio, {n});
    r.details["n0"] = c.n0;
    r.details["initial"] = c.initial.get_str();
    r.details["recurrence"] = c.rec.str();
    return r;
}

Result cmd_sumdiffeq(const Request& q)
{
    std::string k = q.pick(q.k ? q.k : q.var, "k"), x = q.pick(q.x, "x");
    SumDiffEq s = sum_diffeq(parse(q.input), k, x, q.pick(q.func, "F"), q.order_max);
    Result r = de_result(s.de, q.expanded);
    r.details["sigma"] = rf_list(s.sigma, {x});
    r.details["certificate"] = fstr(s.multiplier, {k, x});
    return r;
}

Result cmd_intrecursion(const Request& q)
{
    std::string t = q.pick(q.var ? q.var : q.x, "t"), k = q.pick(q.k ? q.k : q.n, "k");
    IntRecursion s = int_recursion(parse(q.input), t, k, q.pick(q.func, "B"), q.order_max);
    Result r = recurrence_result(s.rec, q.expanded);
    r.details["sigma"] = rf_list(s.sigma, {k});
    r.details["certificate"] = fstr(s.multiplier, {t, k});
    return r;
}

Result cmd_rechyper(const Request& q)
{
    std::string n = q.pick(q.n ? q.n : q.var, "n");
    Recurrence re = parse_recurrence(q.input, q.pick(q.func, "S"), n);
    RatioSolutionSet s = rec_hyper(re);
    Result r;
    r.text = s.str();
    r.details["recurrence"] = re.str();
    r.details["ratios"] = rf_list(s.ratios, {n});
    r.warnings = s.warnings;
    return r;
}

Result cmd_sumtohyper(const Request& q)
{
    std::string k = q.pick(q.k ? q.k : q.var, "k");
    PFQ h = sum_to_hyper(parse(q.input), k);
    Result r;
    r.text = h.str();
    json up = json::array(), lo = json::array();
    for (auto& e : h.upper) up.push_back(e.str());
    for (auto& e : h.lower) lo.push_back(e.str());
    r.details["prefactor"] = h.prefactor.str();
    r.details["upper"] = up;
    r.details["lower"] = lo;
    r.details["argument"] = h.argument.str();
    return r;
}

Result cmd_simplede(const Request& q)
{
    std::string x = q.pick(q.x ? q.x : q.var, "x");
    return de_result(simple_de(parse(q.input), x, q.pick(q.func, "F")), q.expanded);
}

Result cmd_simplere(const Request& q)
{
    std::string x = q.pick(q.x ? q.x : q.var, "x");
    DiffEq de = simple_de(parse(q.input), x, "F");
    Result r = recurrence_result(de_to_re(de, q.pick(q.func, "a"), q.pick(q.k, "k")), q.expanded);
    r.details["equation"] = de.str();
    return r;
}

Result cmd_fps(const Request& q)
{
    std::string x = q.pick(q.x ? q.x : q.var, "x");
    FormalPowerSeries f = fps(parse(q.input), x);
    Result r;
    r.text = f.str();
    r.details["m"] = f.m;
    r.details["s"] = f.s;
    r.details["index"] = f.term.var;
    r.details["coefficient"] = f.c0.is_zero() ? "0" : f.term.display.str();
    json exc = json::array();
    for (auto& [p, c] : f.exceptional) exc.push_back({{"power", p}, {"coefficient", fstr(c)}});
    r.details["exceptional"] = exc;
    return r;
}

Result cmd_factor(const Request& q)
{
    RatFunc v = eval_rf(parse(q.input));
    Result r;
    if (v.is_polynomial()) {
        MPoly p = v.as_polynomial();
        r.text = factor_str(p);
        r.details["numerator"] = factor_json(p);
    } else {
        r.text = "(" + factor_str(v.num()) + ")/(" + factor_str(v.den()) + ")";
        r.details["numerator"] = factor_json(v.num());
        r.details["denominator"] = factor_json(v.den());
    }
    return r;
}

Result cmd_taylor(const Request& q)
{
    std::string x = q.pick(q.x ? q.x : q.var, "x");
    TaylorSeries t = taylor(parse(q.input), x, q.order);
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < t.coeffs.size(); ++i)
        if (!t.coeffs[i].is_zero()) terms.push_back(to_expr(t.coeffs[i]) * Expr::pow(Expr::sym(x), Expr(long(i))));
    Result r;
    r.text = Expr::add(terms).str();
    r.details["variable"] = x;
    r.details["order"] = q.order;
    r.details["coefficients"] = rf_list(t.coeffs);
    return r;
}

Result cmd_normal(const Request& q)
{
    RatFunc v = eval_rf(parse(q.input));
    Result r;
    r.text = to_expr(v).str();
    r.details["numerator"] = to_expr(v.num()).str();
    r.details["denominator"] = to_expr(v.den()).str();
    return r;
}

Result cmd_det(const Request& q)
{
    Matrix m = parse_matrix(q.input);
    if (m.rows() != m.cols()) throw std::invalid_argument("det: the matrix is not square");
    Result r;
    r.text = fstr(determinant(m));
    r.details["size"] = m.rows();
    return r;
}

Result cmd_linsolve(const Request& q)
{
    Matrix m = parse_matrix(q.input);
    std::vector<RatFunc> b;
    for (auto& s : split_list(q.rhs)) b.push_back(eval_rf(parse(s)));
    if (b.size() != m.rows()) throw std::invalid_argument("linsolve: right-hand side has the wrong length");
    LinearSolution s = fraction_free_solve(m, b);
    Result r;
    json ns = json::array();
    for (auto& v : s.nullspace) ns.push_back(rf_list(v));
    if (s.kind == SolveKind::Inconsistent) {
        r.status = "inconsistent";
        r.text = "inconsistent";
        r.details["kind"] = "inconsistent";
        return r;
    }
    r.text = vec_str(s.particular);
    for (std::size_t i = 0; i < s.nullspace.size(); ++i)
        r.text += " + _t" + std::to_string(i + 1) + "*" + vec_str(s.nullspace[i]);
    r.details["kind"] = s.kind == SolveKind::Unique ? "unique" : "parametric";
    r.details["solution"] = rf_list(s.particular);
    r.details["nullspace"] = ns;
    return r;
}

struct Command {
    const char* name;
    const char* help;
    std::function<Result(const Request&)> fn;
};

const std::vector<Command>& commands()
{
    static const std::vector<Command> c{
        {"gosper", "indefinite hypergeometric summation", cmd_gosper},
        {"sumrecursion", "recurrence for a definite sum", cmd_sumrecursion},
        {"closedform", "hypergeometric closed form of a definite sum", cmd_closedform},
        {"sumdiffeq", "differential equation for a definite sum", cmd_sumdiffeq},
        {"intrecursion", "recurrence for a definite integral", cmd_intrecursion},
        {"rechyper", "hypergeometric solutions of a recurrence", cmd_rechyper},
        {"sumtohyper", "hypergeometric representation of a sum", cmd_sumtohyper},
        {"simplede", "holonomic differential equation of an expression", cmd_simplede},
        {"simplere", "recurrence of the Taylor coefficients", cmd_simplere},
        {"fps", "formal power series of hypergeometric type", cmd_fps},
        {"factor", "factorization over Q", cmd_factor},
        {"taylor", "Maclaurin polynomial", cmd_taylor},
        {"normal", "rational normal form", cmd_normal},
        {"det", "determinant of a matrix [[a,b],[c,d]]", cmd_det},
        {"linsolve", "solve A v = b for a matrix A and a list b", cmd_linsolve},
    };
    return c;
}

void emit(const Request& q, const Result& r, std::ostream& out, std::ostream& err)
{
    if (q.format == "json") {
        json j;
        j["command"] = q.command;
        j["status"] = r.status;
        j["result"] = r.text;
        j["details"] = r.details;
        j["warnings"] = r.warnings;
        out << j.dump(2) << "\n";
        return;
    }
    out << r.text << "\n";
    for (auto& w : r.warnings) err << "warning: " << w << "\n";
}

int fail(const Request& q, int code, const std::string& type, const std::string& msg, std::ostream& out,
         std::ostream& err, std::optional<std::size_t> pos = std::nullopt)
{
    if (q.format == "json") {
        json e{{"type", type}, {"message", msg}};
        if (pos) e["position"] = *pos;
        json j;
        j["command"] = q.command;
        j["status"] = "error";
        j["error"] = e;
        out << j.dump(2) << "\n";
    } else {
        err << "error: " << msg << "\n";
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hypergeometric summation and holonomic functions", "hsum"};
    app.require_subcommand(0, 1);
    Request q;
    for (auto& c : commands()) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("input", q.input, "expression, recurrence or matrix")->required();
        if (std::string(c.name) == "linsolve") s->add_option("rhs", q.rhs, "right-hand side list")->required();
        s->add_option("--var", q.var, "principal variable");
        s->add_option("-k,--k", q.k, "summation index");
        s->add_option("-n,--n", q.n, "recurrence index");
        s->add_option("-x,--x", q.x, "continuous variable");
        s->add_option("--func", q.func, "function name in the output");
        s->add_option("--order-max", q.order_max, "largest order searched")->check(CLI::Range(1, 20));
        s->add_option("--order", q.order, "series truncation order")->check(CLI::Range(0, 500));
        s->add_flag("--expanded", q.expanded, "expanded instead of factored coefficients");
        s->add_option("--format", q.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    const Command* cmd = nullptr;
    for (auto& c : commands())
        if (app.got_subcommand(c.name)) cmd = &c;
    if (!cmd) {
        err << app.help();
        return 2;
    }
    q.command = cmd->name;
    try {
        emit(q, cmd->fn(q), out, err);
        return 0;
    } catch (const ParseError& e) {
        return fail(q, 2, "parse_error", e.what(), out, err, e.position);
    } catch (const NoRecurrence& e) {
        return fail(q, 1, "no_recurrence", e.what(), out, err);
    } catch (const NotHypergeometric& e) {
        return fail(q, 1, "not_hypergeometric", e.what(), out, err);
    } catch (const NotHolonomic& e) {
        return fail(q, 1, "not_holonomic", e.what(), out, err);
    } catch (const std::exception& e) {
        return fail(q, 1, "error", e.what(), out, err);
    }
}

}  // namespace hsum
