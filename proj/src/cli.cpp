#include "twoside/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "format.hpp"
#include "twoside/analysis.hpp"
#include "twoside/stat_tests.hpp"

namespace twoside::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFamilies = "chisq, f, unif, tri, tnorm, binom, hyper, nchyper";

constexpr const char* kFooter = R"(Distribution grammar (--dist family:p1,p2,...):
  chisq:K        chi-square with K degrees of freedom
  f:D1,D2        F ratio
  unif:A,B       uniform on [A, B]
  tri:A,B        triangular on [-A, B] with mode 0
  tnorm:L        standard normal left-truncated at -L
  binom:N,P      binomial
  hyper:R,C,N    hypergeometric n11 with margins n1+ = R, n+1 = C, total N
  nchyper:R,C,N,RHO  Fisher noncentral hypergeometric with odds ratio RHO

Anchors: mean | mode | median | value:V
Methods: doubled, conditional, conditional_modified, minlik, weighted:W, all
Discrete one-sided p-values include the observed point on both sides.

Figure CSV columns (analyze figure --which ...), first column always `panel`:
  fig1  rho, power_minlik, power_doubled, power_conditional, power_umpu
  fig2  n, bias_doubled, bias_conditional   (panels chisq and f_n1_6)
  fig3  x, p_prob, p_doubled, p_conditional (panels chisq5 and tnorm0.5; doubled untruncated)
  fig4  x, p_prob, p_conditional, p_conditional_modified, p_doubled (panels binom10, binom11)

Exit codes: 0 success, 2 usage error, 3 domain or degenerate input.)";

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double to_double(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::int64_t to_int(const std::string& s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

int to_df(const std::string& s) {
    const auto v = to_int(s);
    if (v < 1 || v > 1'000'000) throw UsageError("degrees of freedom out of range: '" + s + "'");
    return static_cast<int>(v);
}

double round10(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(detail::format_number(v).c_str(), nullptr);
}

json num(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return round10(v);
}

std::string cell(double v) {
    if (std::isnan(v)) return "";
    return detail::format_number(v);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& t) {
    std::string s;
    auto line = [&](const std::vector<std::string>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ',';
            s += v[i];
        }
        s += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return s;
}

json envelope(const std::string& command, json inputs, json results,
              const std::vector<std::string>& warnings) {
    json e;
    e["schema_version"] = kSchemaVersion;
    e["command"] = command;
    e["inputs"] = std::move(inputs);
    e["results"] = std::move(results);
    e["warnings"] = warnings;
    return e;
}

json weights_json(const std::optional<Weights>& w) {
    if (!w) return nullptr;
    json j;
    j["left"] = num(w->left);
    j["right"] = num(w->right);
    return j;
}

std::string anchor_text(const TailAnchor& a) {
    switch (a.kind) {
        case TailAnchor::Kind::Mean: return "mean";
        case TailAnchor::Kind::Mode: return "mode";
        case TailAnchor::Kind::Median: return "median";
        case TailAnchor::Kind::Explicit: return "value:" + detail::format_number(a.value);
    }
    return "mean";
}

std::string method_text(const PValueMethod& m) {
    if (m.kind == MethodKind::Weighted) return "weighted:" + detail::format_number(m.weights.left);
    return m.name();
}

json methods_json(const std::vector<PValueMethod>& methods) {
    json arr = json::array();
    for (const auto& m : methods) arr.push_back(method_text(m));
    return arr;
}

Table method_table(const std::vector<MethodResult>& results) {
    Table t{{"method", "p_value", "w_left", "w_right"}, {}};
    for (const auto& r : results) {
        t.rows.push_back({method_text(r.method), cell(r.p_value),
                          r.weights ? cell(r.weights->left) : "", r.weights ? cell(r.weights->right) : ""});
    }
    return t;
}

json report_json(const TestReport& r) {
    json j;
    j["distribution"] = r.distribution;
    j["statistic"] = num(r.statistic);
    j["anchor"] = num(r.anchor);
    j["direction"] = to_string(r.direction);
    j["weights"] = weights_json(r.weights);
    j["p_left"] = num(r.p_left);
    j["p_right"] = num(r.p_right);
    j["one_sided_tails"] = r.discrete ? "inclusive" : "continuous";
    json pv = json::array();
    for (const auto& m : r.p_two_sided) {
        json e;
        e["method"] = method_text(m.method);
        e["p_value"] = num(m.p_value);
        e["weights"] = weights_json(m.weights);
        pv.push_back(std::move(e));
    }
    j["p_values"] = std::move(pv);
    return j;
}

struct Output {
    std::string format = "json";
    std::string path;
    bool format_given = false;
};

void write(const Output& o, const std::string& text, std::ostream& out) {
    if (o.path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw UsageError("cannot open output file '" + o.path + "'");
    f << text;
}

// Like dump(2), but floats use the shortest round-trip form.
void pretty(const json& j, int depth, std::string& s) {
    const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    if (j.is_number_float()) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
        std::string t(buf, res.ptr);
        if (t.find_first_of(".e") == std::string::npos) t += ".0";
        s += t;
    } else if (j.is_object() && !j.empty()) {
        s += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            s += (first ? "" : ",\n") + pad + json(k).dump() + ": ";
            pretty(v, depth + 1, s);
            first = false;
        }
        s += "\n" + close + "}";
    } else if (j.is_array() && !j.empty()) {
        s += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            s += (i ? ",\n" : "") + pad;
            pretty(j[i], depth + 1, s);
        }
        s += "\n" + close + "]";
    } else {
        s += j.dump();
    }
}

void emit(const Output& o, const json& env, const Table& table, std::ostream& out) {
    std::string text;
    if (o.format == "csv") {
        text = to_csv(table);
    } else {
        pretty(env, 0, text);
        text += "\n";
    }
    write(o, text, out);
}

PValueMethod parse_bias_method(const std::string& s) {
    if (s == "umpu") return PValueMethod::weighted({});  // weights filled in by the caller
    const auto methods = parse_methods(s, false);
    if (methods.size() != 1) throw UsageError("bias takes a single method");
    return methods.front();
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
    std::vector<std::int64_t> v;
    for (const auto& p : split(s, ',')) v.push_back(to_int(p));
    return v;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> v;
    for (const auto& p : split(s, ',')) v.push_back(to_double(p));
    return v;
}

std::vector<double> read_sample(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read data file '" + path + "'");
    std::vector<double> v;
    std::string line;
    while (std::getline(f, line)) {
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (!line.empty()) v.push_back(to_double(line));
    }
    return v;
}

}  // namespace

Distribution parse_distribution(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw UsageError("distribution must look like family:p1,p2 (families: " + std::string(kFamilies) + ")");
    }
    const std::string family(spec.substr(0, colon));
    const auto p = split(spec.substr(colon + 1), ',');
    auto arity = [&](std::size_t n) {
        if (p.size() != n) {
            throw UsageError(family + " takes " + std::to_string(n) + " parameter(s)");
        }
    };
    try {
        if (family == "chisq") {
            arity(1);
            return Distribution::chi_square(to_df(p[0]));
        }
        if (family == "f") {
            arity(2);
            return Distribution::f_ratio(to_df(p[0]), to_df(p[1]));
        }
        if (family == "unif") {
            arity(2);
            return Distribution::uniform(to_double(p[0]), to_double(p[1]));
        }
        if (family == "tri") {
            arity(2);
            return Distribution::triangular(to_double(p[0]), to_double(p[1]));
        }
        if (family == "tnorm") {
            arity(1);
            return Distribution::truncated_normal(to_double(p[0]));
        }
        if (family == "binom") {
            arity(2);
            return Distribution::binomial(to_int(p[0]), to_double(p[1]));
        }
        if (family == "hyper") {
            arity(3);
            return Distribution::hypergeometric(to_int(p[0]), to_int(p[1]), to_int(p[2]));
        }
        if (family == "nchyper") {
            arity(4);
            return Distribution::nc_hypergeometric(to_int(p[0]), to_int(p[1]), to_int(p[2]),
                                                   to_double(p[3]));
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown distribution family '" + family + "' (supported: " + kFamilies + ")");
}

TailAnchor parse_anchor(std::string_view spec) {
    if (spec == "mean") return TailAnchor::mean();
    if (spec == "mode") return TailAnchor::mode();
    if (spec == "median") return TailAnchor::median();
    if (spec.starts_with("value:")) return TailAnchor::at(to_double(std::string(spec.substr(6))));
    throw UsageError("anchor must be mean, mode, median or value:V");
}

std::vector<PValueMethod> parse_methods(std::string_view spec, bool discrete) {
    std::vector<PValueMethod> out;
    for (const auto& tok : split(spec, ',')) {
        if (tok == "all") {
            out.push_back(PValueMethod::doubled());
            out.push_back(PValueMethod::conditional());
            if (discrete) out.push_back(PValueMethod::conditional_modified());
            out.push_back(PValueMethod::min_likelihood());
        } else if (tok == "doubled") {
            out.push_back(PValueMethod::doubled());
        } else if (tok == "conditional") {
            out.push_back(PValueMethod::conditional());
        } else if (tok == "conditional_modified") {
            out.push_back(PValueMethod::conditional_modified());
        } else if (tok == "minlik") {
            out.push_back(PValueMethod::min_likelihood());
        } else if (tok.starts_with("weighted:")) {
            const double w = to_double(tok.substr(9));
            if (!(w > 0.0 && w < 1.0)) throw UsageError("weighted:W needs 0 < W < 1");
            out.push_back(PValueMethod::weighted({w, 1.0 - w}));
        } else {
            throw UsageError("unknown method '" + tok + "'");
        }
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-sided p-values for asymmetric null distributions", "twoside"};
    app.footer(kFooter);
    app.require_subcommand(1);

    Output output;
    auto add_output = [&](CLI::App* sub, const std::string& default_format) {
        sub->add_option_function<std::string>(
               "--format", [&](const std::string& f) { output.format = f; output.format_given = true; },
               "json (default) or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", output.path, "write to this file instead of stdout");
        sub->callback([&, default_format] {
            if (!output.format_given) output.format = default_format;
        });
    };

    std::string dist_spec;
    std::string anchor_spec = "mean";
    std::string method_spec = "all";

    // pvalue
    double x = 0.0;
    bool no_truncate = false;
    auto* pv = app.add_subcommand("pvalue", "two-sided p-values of one observation");
    pv->add_option("--dist", dist_spec, "null distribution, family:params")->required();
    pv->add_option("--x", x, "observed value")->required();
    pv->add_option("--anchor", anchor_spec, "mean | mode | median | value:V");
    pv->add_option("--method", method_spec, "comma-separated methods or all");
    pv->add_flag("--no-truncate", no_truncate, "report doubled p-values above 1 unchanged");
    add_output(pv, "json");

    // test
    auto* test = app.add_subcommand("test", "statistical tests");
    test->require_subcommand(1);
    double s2 = 0.0;
    std::int64_t n = 0;
    double sigma0sq = 1.0;
    std::string data_path;
    auto* t_var = test->add_subcommand("variance", "one-sample variance test");
    t_var->add_option("--s2", s2, "sample variance");
    t_var->add_option("--n", n, "sample size");
    t_var->add_option("--sigma0sq", sigma0sq, "null variance (default 1)");
    t_var->add_option("--data", data_path, "file with one observation per line");

    double s1sq = 0.0;
    double s2sq = 0.0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    auto* t_f = test->add_subcommand("f", "two-sample variance ratio test");
    t_f->add_option("--s1sq", s1sq)->required();
    t_f->add_option("--n1", n1)->required();
    t_f->add_option("--s2sq", s2sq)->required();
    t_f->add_option("--n2", n2)->required();

    std::int64_t bx = 0;
    std::int64_t bn = 0;
    double p0 = 0.5;
    auto* t_bin = test->add_subcommand("binomial", "exact binomial test");
    t_bin->add_option("--x", bx)->required();
    t_bin->add_option("--n", bn)->required();
    t_bin->add_option("--p0", p0)->required();

    std::string table_spec;
    auto* t_fis = test->add_subcommand("fisher", "Fisher's exact test");
    t_fis->add_option("--table", table_spec, "n11,n12,n21,n22")->required();

    for (auto* sub : {t_var, t_f, t_bin, t_fis}) {
        sub->add_option("--anchor", anchor_spec, "mean | mode | median | value:V");
        sub->add_option("--method", method_spec, "comma-separated methods or all");
        add_output(sub, "json");
    }

    // analyze
    auto* an = app.add_subcommand("analyze", "power, bias, UMPU regions, tables and figure data");
    an->require_subcommand(1);
    double alpha = 0.05;
    auto* a_umpu = an->add_subcommand("umpu", "UMPU tail weight and critical region");
    a_umpu->add_option("--dist", dist_spec, "chisq:K or f:D1,D2")->required();
    a_umpu->add_option("--alpha", alpha, "level (default 0.05)");
    add_output(a_umpu, "json");

    std::string bias_method = "conditional";
    auto* a_bias = an->add_subcommand("bias", "bias of a two-sided scale test");
    a_bias->add_option("--dist", dist_spec, "chisq:K or f:D1,D2")->required();
    a_bias->add_option("--method", bias_method, "doubled | conditional | minlik | umpu | weighted:W");
    a_bias->add_option("--alpha", alpha, "level (default 0.05)");
    add_output(a_bias, "json");

    std::string ns_spec;
    std::string ps_spec;
    auto* a_t1 = an->add_subcommand("table1", "binomial tail weights about the mean");
    a_t1->add_option("--n", ns_spec, "comma-separated sample sizes");
    a_t1->add_option("--p", ps_spec, "comma-separated probabilities");
    add_output(a_t1, "json");

    std::string margins_spec = "9,5,30";
    auto* a_t2 = an->add_subcommand("table2", "Fisher exact test p-values over all tables");
    a_t2->add_option("--margins", margins_spec, "n1+,n+1,n");
    add_output(a_t2, "json");

    std::string which;
    int resolution = 512;
    auto* a_fig = an->add_subcommand("figure", "figure data series");
    a_fig->add_option("--which", which, "fig1 | fig2 | fig3 | fig4")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
    a_fig->add_option("--resolution", resolution, "grid points (default 512)")->check(CLI::Range(2, 100000));
    add_output(a_fig, "csv");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "twoside: " << e.what() << "\n";
        return kUsage;
    }

    std::vector<std::string> warnings;
    try {
        if (*pv) {
            const auto d = parse_distribution(dist_spec);
            const auto anchor = parse_anchor(anchor_spec);
            const auto methods = parse_methods(method_spec, d.is_discrete());
            const double A = resolve_anchor(d, anchor);
            json inputs;
            inputs["dist"] = d.describe();
            inputs["x"] = num(x);
            inputs["anchor"] = anchor_text(anchor);
            inputs["methods"] = methods_json(methods);
            inputs["truncate"] = !no_truncate;
            std::vector<MethodResult> results;
            for (const auto& m : methods) {
                results.push_back({m, two_sided_pvalue(d, x, A, m, !no_truncate), method_weights(d, A, m)});
            }
            json res;
            res["anchor"] = num(A);
            res["weights"] = weights_json(conditional_weights(d, A, false));
            res["p_left"] = num(cdf(d, x));
            res["p_right"] = num(sf(d, x));
            json pvs = json::array();
            for (const auto& r : results) {
                json e;
                e["method"] = method_text(r.method);
                e["p_value"] = num(r.p_value);
                e["weights"] = weights_json(r.weights);
                pvs.push_back(std::move(e));
            }
            res["p_values"] = std::move(pvs);
            emit(output, envelope("pvalue", inputs, res, warnings), method_table(results), out);
            return kOk;
        }

        if (*test) {
            const auto anchor = parse_anchor(anchor_spec);
            json inputs;
            TestReport rep;
            std::string name;
            if (*t_var) {
                name = "test variance";
                const auto methods = parse_methods(method_spec, false);
                if (!data_path.empty()) {
                    const auto sample = read_sample(data_path);
                    inputs["data"] = data_path;
                    rep = variance_test(sample, sigma0sq, anchor, methods);
                } else {
                    if (t_var->count("--s2") == 0 || t_var->count("--n") == 0) {
                        throw UsageError("test variance needs --s2 and --n, or --data");
                    }
                    inputs["s2"] = num(s2);
                    inputs["n"] = n;
                    rep = variance_test(s2, n, sigma0sq, anchor, methods);
                }
                inputs["sigma0sq"] = num(sigma0sq);
            } else if (*t_f) {
                name = "test f";
                inputs["s1sq"] = num(s1sq);
                inputs["n1"] = n1;
                inputs["s2sq"] = num(s2sq);
                inputs["n2"] = n2;
                rep = f_test(s1sq, n1, s2sq, n2, anchor, parse_methods(method_spec, false));
            } else if (*t_bin) {
                name = "test binomial";
                inputs["x"] = bx;
                inputs["n"] = bn;
                inputs["p0"] = num(p0);
                rep = binomial_test(bx, bn, p0, anchor, parse_methods(method_spec, true));
            } else {
                name = "test fisher";
                const auto cells = parse_int_list(table_spec);
                if (cells.size() != 4) throw UsageError("--table needs four counts n11,n12,n21,n22");
                const ContingencyTable table{cells[0], cells[1], cells[2], cells[3]};
                inputs["table"] = cells;
                rep = fisher_exact(table, anchor, parse_methods(method_spec, true));
            }
            inputs["anchor"] = anchor_text(anchor);
            emit(output, envelope(name, inputs, report_json(rep), warnings), method_table(rep.p_two_sided), out);
            return kOk;
        }

        if (*a_umpu) {
            const auto d = parse_distribution(dist_spec);
            const auto u = umpu_weights(d, alpha);
            json inputs;
            inputs["dist"] = d.describe();
            inputs["alpha"] = num(alpha);
            json res;
            res["w_left"] = num(u.w_left);
            res["c_left"] = num(u.region.c_left);
            res["c_right"] = num(u.region.c_right);
            res["alpha_left"] = num(u.w_left * alpha);
            res["alpha_right"] = num((1.0 - u.w_left) * alpha);
            res["anchor"] = num(u.region.anchor);
            Table t{{"w_left", "c_left", "c_right", "alpha_left", "alpha_right", "anchor"},
                    {{cell(u.w_left), cell(u.region.c_left), cell(u.region.c_right), cell(u.w_left * alpha),
                      cell((1.0 - u.w_left) * alpha), cell(u.region.anchor)}}};
            emit(output, envelope("analyze umpu", inputs, res, warnings), t, out);
            return kOk;
        }

        if (*a_bias) {
            const auto d = parse_distribution(dist_spec);
            PValueMethod m = parse_bias_method(bias_method);
            if (bias_method == "umpu") {
                const double w = umpu_weights(d, alpha).w_left;
                m = PValueMethod::weighted({w, 1.0 - w});
            }
            auto rep = bias(d, m, alpha);
            if (bias_method == "umpu") rep.method = "umpu";
            warnings = rep.warnings;
            json inputs;
            inputs["dist"] = d.describe();
            inputs["method"] = bias_method;
            inputs["alpha"] = num(alpha);
            json res;
            res["method"] = rep.method;
            res["level"] = num(rep.level);
            res["min_power"] = num(rep.min_power);
            res["bias"] = num(rep.bias);
            res["argmin_rho"] = num(rep.argmin_rho);
            res["w_left"] = num(rep.region.w_left);
            res["c_left"] = num(rep.region.c_left);
            res["c_right"] = num(rep.region.c_right);
            Table t{{"method", "level", "min_power", "bias", "argmin_rho", "w_left", "c_left", "c_right"},
                    {{rep.method, cell(rep.level), cell(rep.min_power), cell(rep.bias), cell(rep.argmin_rho),
                      cell(rep.region.w_left), cell(rep.region.c_left), cell(rep.region.c_right)}}};
            emit(output, envelope("analyze bias", inputs, res, warnings), t, out);
            return kOk;
        }

        if (*a_t1) {
            const auto ns = ns_spec.empty() ? default_table1_ns() : parse_int_list(ns_spec);
            const auto ps = ps_spec.empty() ? default_table1_ps() : parse_double_list(ps_spec);
            const auto rows = binomial_weight_table(ns, ps);
            json inputs;
            inputs["n"] = ns;
            json plist = json::array();
            for (double p : ps) plist.push_back(num(p));
            inputs["p"] = std::move(plist);
            json res = json::array();
            Table t{{"n", "p", "w_left", "ratio", "w_left_modified"}, {}};
            for (const auto& r : rows) {
                json e;
                e["n"] = r.n;
                e["p"] = num(r.p);
                e["w_left"] = num(r.w_left);
                e["ratio"] = num(r.ratio);
                e["w_left_modified"] = num(r.w_left_modified);
                res.push_back(std::move(e));
                t.rows.push_back({std::to_string(r.n), cell(r.p), cell(r.w_left), cell(r.ratio),
                                  cell(r.w_left_modified)});
            }
            emit(output, envelope("analyze table1", inputs, res, warnings), t, out);
            return kOk;
        }

        if (*a_t2) {
            const auto m = parse_int_list(margins_spec);
            if (m.size() != 3) throw UsageError("--margins needs three counts n1+,n+1,n");
            const auto rows = fisher_pvalue_table(m[0], m[1], m[2]);
            json inputs;
            inputs["margins"] = m;
            json res = json::array();
            Table t{{"n11", "probability", "p_one_sided", "p_prob", "p_conditional"}, {}};
            for (const auto& r : rows) {
                json e;
                e["n11"] = r.n11;
                e["probability"] = num(r.probability);
                e["p_one_sided"] = num(r.p_one_sided);
                e["p_prob"] = num(r.p_min_likelihood);
                e["p_conditional"] = num(r.p_conditional);
                res.push_back(std::move(e));
                t.rows.push_back({std::to_string(r.n11), cell(r.probability), cell(r.p_one_sided),
                                  cell(r.p_min_likelihood), cell(r.p_conditional)});
            }
            emit(output, envelope("analyze table2", inputs, res, warnings), t, out);
            return kOk;
        }

        if (*a_fig) {
            const Figure fig = which == "fig1"   ? Figure::Fig1
                               : which == "fig2" ? Figure::Fig2
                               : which == "fig3" ? Figure::Fig3
                                                 : Figure::Fig4;
            const auto data = figure_data(fig, resolution);
            Table t;
            t.header.push_back("panel");
            t.header.insert(t.header.end(), data.columns.begin(), data.columns.end());
            json res = json::array();
            for (std::size_t i = 0; i < data.rows.size(); ++i) {
                std::vector<std::string> row{data.panel[i]};
                json e;
                e["panel"] = data.panel[i];
                for (std::size_t c = 0; c < data.columns.size(); ++c) {
                    row.push_back(cell(data.rows[i][c]));
                    e[data.columns[c]] = num(data.rows[i][c]);
                }
                t.rows.push_back(std::move(row));
                res.push_back(std::move(e));
            }
            json inputs;
            inputs["which"] = which;
            inputs["resolution"] = resolution;
            emit(output, envelope("analyze figure", inputs, res, warnings), t, out);
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        err << "twoside: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "twoside: " << e.what() << "\n";
        return kDomain;
    } catch (const std::range_error& e) {
        err << "twoside: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        err << "twoside: " << e.what() << "\n";
        return kDomain;
    }
    err << "twoside: no command given\n";
    return kUsage;
}

}  // namespace twoside::cli
