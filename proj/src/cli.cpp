#include "tcsolve/cli.hpp"

#include "tcsolve/errors.hpp"
#include "tcsolve/growth.hpp"
#include "tcsolve/numeric.hpp"
#include "tcsolve/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace tcsolve {

using Json = nlohmann::ordered_json;

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::Verify, "verify"},         {Command::Search, "search"},         {Command::Classify, "classify"},
    {Command::Growth, "growth"},         {Command::Nevanlinna, "nevanlinna"}, {Command::Plot, "plot"},
};

Json growth_class_json(const GrowthClass& g) {
    Json j;
    j["order"] = g.order.get_str();
    j["type"] = g.type_coeff;
    j["exact_type"] = g.exact_type ? Json(g.exact_type->get_str()) : Json(nullptr);
    j["source"] = g.source;
    return j;
}

Json verdict_json(const GrowthVerdict& v) {
    Json j;
    j["rational"] = v.rational;
    j["growth"] = v.growth ? growth_class_json(*v.growth) : Json(nullptr);
    return j;
}

const TCEquation& need_equation(const ParsedInput& in, Command c) {
    if (!in.equation) fail(ErrorKind::InvalidInput, std::string(to_string(c)) + " needs an equation: line");
    return *in.equation;
}

Json run_verify(const ParsedInput& in, std::ostream& text) {
    const TCEquation& eq = need_equation(in, Command::Verify);
    if (in.candidates.empty()) fail(ErrorKind::InvalidInput, "verify needs at least one candidate: line");
    Json out = Json::array();
    for (const auto& f : in.candidates) {
        bool ok = sol_verify(eq, f);
        Json j;
        j["candidate"] = f.str();
        j["verdict"] = ok ? to_string(Verdict::Verified) : "NotVerified";
        j["residual"] = ok ? Json(nullptr) : Json(eq.residual(f).str());
        text << "  candidate " << f.str() << ": " << j["verdict"].get<std::string>() << "\n";
        if (!ok) text << "    residual " << j["residual"].get<std::string>() << "\n";
        out.push_back(j);
    }
    return out;
}

Json run_search(const ParsedInput& in, const CliSettings& settings, std::ostream& text) {
    const TCEquation& eq = need_equation(in, Command::Search);
    SolverOptions opt;
    opt.assume_small_pole_count = settings.assume_small_pole_count;
    opt.degree_cap = settings.degree_cap;
    SolutionReport rep = sol_decide(eq, opt);
    Json j;
    j["verdict"] = to_string(rep.verdict);
    j["solutions"] = Json::array();
    for (const auto& s : rep.solutions) j["solutions"].push_back(s.str());
    j["residual"] = rep.residual ? Json(rep.residual->str()) : Json(nullptr);
    j["theorem_coverage"] = rep.theorem_coverage;
    j["coverage_note"] = rep.coverage_note;
    j["degree_cap"] = rep.degree_cap;
    j["branch_trace"] = Json::array();
    for (const auto& b : rep.branch_trace)
        j["branch_trace"].push_back({{"label", b.label}, {"outcome", b.outcome}, {"exhaustive", b.exhaustive}});
    text << "  verdict " << to_string(rep.verdict) << "\n";
    for (const auto& s : rep.solutions) text << "  solution " << s.str() << "\n";
    if (rep.residual) text << "  residual " << rep.residual->str() << "\n";
    if (!rep.coverage_note.empty()) text << "  coverage " << rep.coverage_note << "\n";
    return j;
}

std::pair<unsigned, LinearOde> classify_data(const ParsedInput& in) {
    unsigned n = in.n ? *in.n : in.equation ? in.equation->n() : 0;
    if (n == 0) fail(ErrorKind::InvalidInput, "classify needs an equation: or n: line");
    if (in.ode) return {n, *in.ode};
    if (!in.equation) fail(ErrorKind::MissingOde, "classify needs an ode: line or an equation to derive one");
    return {n, *in.equation->with_derived_ode().ode()};
}

Json run_classify(const ParsedInput& in, std::ostream& text) {
    auto [n, ode] = classify_data(in);
    Theo13Report rep = gc_theo13_classify(n, ode.r0, ode.r1);
    Json j;
    j["n"] = n;
    j["r0"] = ode.r0.str();
    j["r1"] = ode.r1.str();
    j["c0"] = rep.c0.str();
    j["m"] = rep.m.get_str();
    j["c1"] = rep.c1 ? Json(rep.c1->str()) : Json(nullptr);
    j["l"] = rep.l ? Json(rep.l->get_str()) : Json(nullptr);
    j["ratio"] = rep.ratio ? Json(rep.ratio->str()) : Json(nullptr);
    j["critical_ratio"] = rep.critical_ratio.get_str();
    j["branches"] = Json::array();
    text << "  n = " << n << ", r0 = " << ode.r0.str() << ", r1 = " << ode.r1.str() << "\n";
    if (rep.ratio) text << "  ratio " << rep.ratio->str() << " (critical " << rep.critical_ratio.get_str() << ")\n";
    for (const auto& b : rep.branches) {
        Json bj;
        bj["label"] = b.label;
        bj["admissible"] = b.admissible;
        bj["reason"] = b.reason;
        bj["prediction"] = b.prediction ? growth_class_json(*b.prediction) : Json(nullptr);
        bj["contract"] = b.contract;
        j["branches"].push_back(bj);
        text << "  branch " << b.label << ": " << (b.admissible ? "admissible" : "inadmissible") << " (" << b.reason
             << ")\n";
    }
    j["possible_orders"] = Json::array();
    for (const auto& g : gc_possible_orders(ode.r1, ode.r0)) {
        j["possible_orders"].push_back(growth_class_json(g));
        text << "  possible order " << g.order.get_str() << ", type " << g.type_coeff << "\n";
    }
    return j;
}

Json run_growth(const ParsedInput& in, std::ostream& text) {
    if (!in.ode) fail(ErrorKind::MissingOde, "growth needs an ode: line");
    GrowthVerdict v = in.ode_order == 1 ? gc_classify_l3(in.ode->r0) : gc_classify_l2(in.ode->r1, in.ode->r0);
    Json j = verdict_json(v);
    j["ode_order"] = in.ode_order;
    if (v.rational) text << "  every meromorphic solution is rational\n";
    else text << "  order " << v.growth->order.get_str() << ", type " << v.growth->type_coeff << "\n";
    return j;
}

ExpFraction numeric_function(const ParsedInput& in) {
    if (in.function) return *in.function;
    if (!in.candidates.empty()) return in.candidates.front();
    if (in.equation) return ExpFraction(in.equation->h());
    fail(ErrorKind::InvalidInput, "nevanlinna needs a function: line");
}

std::vector<NevanlinnaSample> sample(const ExpFraction& f, const CliSettings& settings) {
    std::vector<double> radii = settings.radii;
    if (radii.empty()) radii = nl_adaptive_radii([&](double r) { return nl_log_max_modulus(f, r); });
    NevanlinnaOptions opt;
    opt.grid = settings.grid;
    opt.rel_tol = settings.tolerance;
    std::vector<NevanlinnaSample> out;
    for (double r : radii) out.push_back(nl_nevanlinna(f, r, opt));
    return out;
}

Json run_nevanlinna(const ParsedInput& in, const CliSettings& settings, std::ostream& text,
                    std::vector<NevanlinnaSample>& samples) {
    ExpFraction f = numeric_function(in);
    samples = sample(f, settings);
    Json j;
    j["function"] = f.str();
    j["samples"] = Json::array();
    for (const auto& s : samples)
        j["samples"].push_back({{"r", s.r}, {"T", s.T_r}, {"m", s.m_r}, {"N", s.N_r}, {"nu", s.nu_r},
                                {"logM", s.logM_r}, {"zeros", s.n_zeros}, {"N_zero", s.N_zero_r}});
    try {
        OrderType fit = nl_fit_order_type(samples);
        j["fit"] = {{"rho", fit.rho}, {"type", fit.type}};
        text << "  fitted order " << fit.rho << ", type " << fit.type << "\n";
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientSamples) throw;
        j["fit"] = nullptr;
        text << "  no fit: " << e.what() << "\n";
    }
    text << "  " << samples.size() << " samples for " << f.str() << "\n";
    return j;
}

Json settings_json(const CliSettings& s) {
    Json j;
    j["tolerance"] = s.tolerance;
    j["degree_cap"] = s.degree_cap ? Json(*s.degree_cap) : Json(nullptr);
    j["radii"] = s.radii;
    j["grid"] = s.grid;
    j["assume_small_pole_count"] = s.assume_small_pole_count;
    return j;
}

}  // namespace

std::optional<Command> command_from_string(const std::string& name) {
    for (const auto& [c, n] : kCommands)
        if (name == n) return c;
    return std::nullopt;
}

const char* to_string(Command c) {
    for (const auto& [k, n] : kCommands)
        if (k == c) return n;
    return "?";
}

CliReport cli_run(Command command, const std::vector<ParsedInput>& inputs, const CliSettings& settings) {
    CliReport rep;
    rep.json["schema"] = kReportSchema;
    rep.json["command"] = to_string(command);
    rep.json["settings"] = settings_json(settings);
    rep.json["results"] = Json::array();
    std::ostringstream text;
    std::vector<NevanlinnaSample> all_samples;
    for (size_t k = 0; k < inputs.size(); ++k) {
        const ParsedInput& in = inputs[k];
        Json r;
        r["index"] = k + 1;
        r["equation"] = in.equation ? Json(in.equation->str()) : Json(nullptr);
        text << "[" << k + 1 << "] " << (in.equation ? in.equation->str() : std::string("(no equation)")) << "\n";
        try {
            switch (command) {
                case Command::Verify: r["candidates"] = run_verify(in, text); break;
                case Command::Search: r["search"] = run_search(in, settings, text); break;
                case Command::Classify: r["classify"] = run_classify(in, text); break;
                case Command::Growth: r["growth"] = run_growth(in, text); break;
                case Command::Nevanlinna:
                case Command::Plot: {
                    std::vector<NevanlinnaSample> samples;
                    r["nevanlinna"] = run_nevanlinna(in, settings, text, samples);
                    all_samples.insert(all_samples.end(), samples.begin(), samples.end());
                    break;
                }
            }
            r["error"] = nullptr;
        } catch (const Error& e) {
            r["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
            text << "  error " << e.what() << "\n";
            rep.exit_code = 1;
        }
        rep.json["results"].push_back(r);
    }
    if (command == Command::Nevanlinna || command == Command::Plot) rep.csv = nl_sample_table(all_samples);
    if (command == Command::Plot && !all_samples.empty()) rep.svg = render_growth_svg(all_samples);
    rep.text = text.str();
    return rep;
}

CliReport cli_error_report(Command command, const std::string& kind, const std::string& message) {
    CliReport rep;
    rep.exit_code = 1;
    rep.json["schema"] = kReportSchema;
    rep.json["command"] = to_string(command);
    rep.json["error"] = {{"kind", kind}, {"message", message}};
    rep.text = "error " + message + "\n";
    return rep;
}

std::string render_growth_svg(const std::vector<NevanlinnaSample>& samples) {
    const double width = 640, height = 400, margin = 60;
    std::vector<std::pair<double, double>> t_pts, m_pts;
    for (const auto& s : samples) {
        if (s.r <= 0) continue;
        if (s.T_r > 0) t_pts.emplace_back(std::log10(s.r), std::log10(s.T_r));
        if (s.logM_r > 0) m_pts.emplace_back(std::log10(s.r), std::log10(s.logM_r));
    }
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto* pts : {&t_pts, &m_pts})
        for (auto [x, y] : *pts) x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-9) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-9) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\"/>\n";
    auto label = [&](double x, double y, const std::string& s, const char* anchor) {
        os << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"" << anchor << "\">" << s
           << "</text>\n";
    };
    std::ostringstream v;
    v << std::setprecision(4);
    auto num = [&](double x) {
        v.str("");
        v << std::pow(10.0, x);
        return v.str();
    };
    label(margin, height - margin + 18, num(x0), "middle");
    label(width - margin, height - margin + 18, num(x1), "middle");
    label(margin - 6, height - margin, num(y0), "end");
    label(margin - 6, margin + 4, num(y1), "end");
    label(width / 2, height - 15, "r (log scale)", "middle");
    label(margin, margin - 20, "T(r) and log M(r) (log scale)", "start");
    auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const char* colour) {
        if (pts.empty()) return;
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (size_t k = 0; k < pts.size(); ++k) os << (k ? " " : "") << px(pts[k].first) << "," << py(pts[k].second);
        os << "\"/>\n";
        for (auto [x, y] : pts)
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    };
    polyline(t_pts, "steelblue");
    polyline(m_pts, "firebrick");
    os << "<text x=\"" << width - margin << "\" y=\"" << margin - 20
       << "\" font-size=\"12\" text-anchor=\"end\" fill=\"steelblue\">T(r)</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << margin - 6
       << "\" font-size=\"12\" text-anchor=\"end\" fill=\"firebrick\">log M(r)</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace tcsolve
