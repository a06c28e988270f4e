#include "birat3/cli.hpp"

#include "birat3/flopatlas.hpp"
#include "birat3/links.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace birat3 {

using nlohmann::json;

namespace {

struct ValidationFailure : std::runtime_error {
    json body;
    ValidationFailure(const std::string& msg, json b) : std::runtime_error(msg), body(std::move(b)) {}
};

std::int64_t parse_count(const std::string& s, const std::string& what) {
    static const std::regex re("^[0-9]{1,15}$");
    if (!std::regex_match(s, re)) throw std::invalid_argument(what + ": expected a positive integer, got '" + s + "'");
    std::int64_t v = std::stoll(s);
    if (v < 1) throw std::invalid_argument(what + " must be positive");
    return v;
}

void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            throw SchemaError(ptr + "/" + it.key(), "unknown field");
}

WeightVector weight_at(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw SchemaError(ptr, "expected a weight string");
    try {
        return parse_weight(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
}

json bound_json(const DepthBound& b) {
    if (b.exact()) return b.lower;
    return b.str();
}

json point_json(const LocalPoint& p) {
    json j = {{"status", to_string(p.status)}, {"detail", p.detail}};
    if (p.status == PointStatus::Quotient || p.status == PointStatus::CA) j["model"] = p.model.str();
    return j;
}

const SingularityModel& need_model(const JobSpec& job) {
    if (!job.model) throw SchemaError("/model", "missing field");
    return *job.model;
}

const WeightVector& need_weight(const JobSpec& job, std::size_t i = 0) {
    if (job.options.weights.size() <= i) throw SchemaError("/options/weight", "command " + job.command + " needs a weight");
    return job.options.weights[i];
}

json contraction_json(const Contraction& c) {
    json j;
    j["weight"] = c.weight.str();
    j["discrepancy"] = rat_json(c.discrepancy);
    j["m"] = c.m;
    j["nonpositive"] = c.nonpositive;
    j["exceptional"] = c.exceptional_description;
    return j;
}

json cmd_classify(const JobSpec& job) {
    const SingularityModel& m = need_model(job);
    ValidationReport v = validate_normal_form(m);
    json out;
    out["valid"] = v.valid;
    out["failures"] = v.failures;
    out["notes"] = v.notes;
    out["model"] = model_to_json(m);
    if (v.valid) {
        out["cartier_index"] = cartier_index(m);
        out["origin"] = point_json(classify_local(m.ambient, m.vars, m.equations));
    }
    if (!v.valid) throw ValidationFailure("normal form check failed", out);
    return out;
}

json cmd_blowup(const JobSpec& job) {
    const SingularityModel& m = need_model(job);
    Contraction c = weighted_blowup(m, need_weight(job));
    json out = contraction_json(c);
    out["w_morphism"] = is_w_morphism(c);
    out["charts"] = json::array();
    for (const auto& ch : c.charts) {
        json e = {{"index", ch.index}, {"label", ch.label}, {"action", ch.quotient.str()}, {"vars", ch.vars}};
        e["equations"] = json::array();
        for (const auto& f : ch.equations) e["equations"].push_back(f.str());
        out["charts"].push_back(e);
    }
    out["singular_points"] = json::array();
    for (const auto& p : chart_singularities(c)) {
        json e = point_json(p.point);
        e["chart"] = p.chart_label;
        e["locus"] = p.locus;
        out["singular_points"].push_back(e);
    }
    return out;
}

json cmd_wmorphisms(const JobSpec& job) {
    WMorphismList l = enumerate_w_morphisms(need_model(job));
    json out;
    out["complete"] = l.complete;
    out["note"] = l.note;
    out["count"] = l.contractions.size();
    out["w_morphisms"] = json::array();
    for (const auto& c : l.contractions) out["w_morphisms"].push_back(contraction_json(c));
    return out;
}

json cmd_depth(const JobSpec& job, const DepthOptions& opt) {
    DepthReport r = depth_report(need_model(job), opt);
    return {{"gdep", bound_json(r.gdep)}, {"dep", bound_json(r.dep)}, {"dep_gor", bound_json(r.dep_gor)}};
}

json cmd_link(const JobSpec& job) {
    const SingularityModel& m = need_model(job);
    LinkResult l = ca_link(m, weighted_blowup(m, need_weight(job)));
    XiResult xi = xi_condition(l.data);
    DiscrepancyPair p = dcp_discrepancies(l.data);
    json out;
    out["flop"] = l.flop;
    out["eta4"] = l.eta4.str();
    out["linked"] = contraction_json(l.linked);
    out["second_weight"] = l.data.a2.str();
    out["a_E"] = rat_json(p.aEX);
    out["a_F"] = rat_json(p.aFX);
    out["xi"] = {{"holds", xi.holds}, {"strict", xi.strict}, {"failures", xi.failures}};
    out["intersection"] = rat_json(kng_intersection(l.data));
    out["m"] = l.data.m;
    out["note"] = l.note;
    return out;
}

json chart_json(const FlopModel& fm, const FlopChart& c) {
    return {{"name", c.name},
            {"action", c.action.str()},
            {"equation", c.equation.str()},
            {"regenerates", check_chart(fm, c).empty()}};
}

json cmd_flop_charts(const JobSpec& job, const DepthOptions& opt) {
    const SingularityModel& m = need_model(job);
    LinkResult l = ca_link(m, weighted_blowup(m, need_weight(job)));
    json out;
    out["flop"] = l.flop;
    if (!l.flop) {
        out["note"] = "the link is negative, no flop";
        return out;
    }
    FlopModel fm = build_flop(m, l);
    WeightVector w = job.options.weights.size() > 1 ? job.options.weights[1] : strict_weight(fm);
    VPrimeReport rep = v_prime(fm, w);
    out["V"] = {{"equation", fm.v_equation.str()}, {"action", fm.action.str()}, {"k", fm.k}, {"m", fm.m}};
    out["Z1"] = json::array();
    out["Z2"] = json::array();
    for (const auto& c : fm.z1) out["Z1"].push_back(chart_json(fm, c));
    for (const auto& c : fm.z2) out["Z2"].push_back(chart_json(fm, c));
    out["weight"] = w.str();
    out["V_side"] = json::array();
    out["Z_side"] = json::array();
    for (const auto& c : rep.atlas.v_side) out["V_side"].push_back(chart_json(fm, c));
    for (const auto& c : rep.atlas.z_side) out["Z_side"].push_back(chart_json(fm, c));
    json iso = json::object();
    std::vector<std::size_t> pairs = {1, 2};
    if (rep.atlas.v_side.size() == 5) pairs.push_back(4);
    for (auto j : pairs)
        iso[std::to_string(j + 1)] = normalize_chart(rep.atlas.z_side[j]) == normalize_chart(rep.atlas.v_side[j]);
    out["isomorphic"] = iso;
    out["f_prime"] = rep.f_prime.str();
    out["f_second"] = rep.f_second.str();
    out["w_f_second"] = rat_json(rep.w_f_second);
    if (fm.m == fm.k) out["uz_smooth"] = rep.uz_smooth;
    out["q_factorial"] = rep.q_factorial;
    out["irreducibility"] = {{"outcome", to_string(rep.irreducibility.outcome)},
                             {"absolute", rep.irreducibility.absolute},
                             {"method", rep.irreducibility.method}};
    if (w.b[0] > fm.r) {
        DepthEngine eng(opt);
        FlipReport f = flip_bookkeeping(fm, w, eng);
        out["flip"] = {{"v_indices", f.v_indices},
                       {"z_indices", f.z_indices},
                       {"delta", f.delta},
                       {"delta_gdep", f.delta_gdep},
                       {"type", f.flip_type}};
    }
    return out;
}

json cmd_verify_tables(const JobSpec& job) {
    std::vector<const TableEntry*> rows;
    if (job.options.rows.empty())
        for (const auto& e : table_registry()) rows.push_back(&e);
    else
        for (std::size_t i = 0; i < job.options.rows.size(); ++i) {
            try {
                rows.push_back(&table_lookup(job.options.rows[i]));
            } catch (const std::out_of_range&) {
                throw SchemaError("/options/rows/" + std::to_string(i), "unknown row " + job.options.rows[i]);
            }
        }
    json out;
    out["rows"] = json::array();
    int instances = 0, failed = 0;
    for (const TableEntry* e : rows) {
        ReplaySummary s = replay_row(*e);
        instances += s.instances;
        if (!s.failures.empty()) ++failed;
        out["rows"].push_back({{"id", s.id}, {"instances", s.instances}, {"passed", s.passed}, {"failures", s.failures}});
    }
    out["instances"] = instances;
    out["failed_rows"] = failed;
    if (failed) throw ValidationFailure("table replay failed", out);
    return out;
}

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '\n') {
            o += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

json error_json(const std::string& kind, const std::string& msg, const std::string& pointer = "") {
    json e = {{"kind", kind}, {"message", msg}};
    if (!pointer.empty()) e["pointer"] = pointer;
    return {{"error", e}};
}

}  // namespace

WeightVector parse_weight(const std::string& text) {
    static const std::regex re(R"(^\s*(?:1/([0-9]+)\s*:)?\s*(-?[0-9]+(?:\s*,\s*-?[0-9]+)*)\s*$)");
    std::smatch mt;
    if (!std::regex_match(text, mt, re)) throw std::invalid_argument("malformed weight '" + text + "'");
    std::int64_t r = 1;
    if (mt[1].matched) {
        if (mt[1].length() > 15) throw std::invalid_argument("index too large");
        r = std::stoll(mt[1].str());
        if (r < 1) throw std::invalid_argument("weight index must be positive in '" + text + "'");
    }
    std::vector<std::int64_t> b;
    std::stringstream ss(mt[2].str());
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.size() > 16) throw std::invalid_argument("weight entry too large");
        std::int64_t v = std::stoll(item);
        if (v < 1) throw std::invalid_argument("weight entries must be positive in '" + text + "'");
        b.push_back(v);
    }
    return WeightVector(r, b);
}

JobSpec parse_job(const json& j) {
    only_keys(j, "", {"version", "command", "model", "options"});
    JobSpec job;
    if (!j.contains("version")) throw SchemaError("/version", "missing field");
    if (!j["version"].is_number_integer() || j["version"].get<std::int64_t>() != kJobVersion)
        throw SchemaError("/version", "unsupported version, expected " + std::to_string(kJobVersion));
    if (!j.contains("command")) throw SchemaError("/command", "missing field");
    if (!j["command"].is_string()) throw SchemaError("/command", "expected a string");
    job.command = j["command"].get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), job.command) == kCommands.end())
        throw SchemaError("/command", "unknown command '" + job.command + "'");
    if (j.contains("model")) job.model = model_from_json(j["model"], "/model");
    if (j.contains("options")) {
        const json& o = j["options"];
        only_keys(o, "/options", {"weight", "format", "budget", "rows"});
        if (o.contains("weight")) {
            const json& w = o["weight"];
            if (w.is_array())
                for (std::size_t i = 0; i < w.size(); ++i)
                    job.options.weights.push_back(weight_at(w[i], "/options/weight/" + std::to_string(i)));
            else
                job.options.weights.push_back(weight_at(w, "/options/weight"));
        }
        if (o.contains("format")) {
            if (!o["format"].is_string()) throw SchemaError("/options/format", "expected a string");
            job.options.format = o["format"].get<std::string>();
        }
        if (o.contains("budget")) {
            if (!o["budget"].is_number_integer() || o["budget"].get<std::int64_t>() < 1)
                throw SchemaError("/options/budget", "expected a positive integer");
            job.options.budget = o["budget"].get<std::int64_t>();
        }
        if (o.contains("rows")) {
            const json& rs = o["rows"];
            if (!rs.is_array()) throw SchemaError("/options/rows", "expected an array of row ids");
            for (std::size_t i = 0; i < rs.size(); ++i) {
                if (!rs[i].is_string()) throw SchemaError("/options/rows/" + std::to_string(i), "expected a string");
                job.options.rows.push_back(rs[i].get<std::string>());
            }
        }
    }
    if (job.options.format != "json" && job.options.format != "dot")
        throw SchemaError("/options/format", "expected \"json\" or \"dot\"");
    if (job.options.format == "dot" && job.command != "resolve")
        throw SchemaError("/options/format", "dot output is only available for resolve");
    if (job.command == "verify-tables" && job.model) throw SchemaError("/model", "verify-tables takes no model");
    if (job.command != "verify-tables" && !job.model) throw SchemaError("/model", "missing field");
    return job;
}

std::int64_t effective_budget(const JobSpec& job, const RunSettings& s) {
    if (s.budget_flag) {
        if (*s.budget_flag < 1) throw std::invalid_argument("--budget must be positive");
        return *s.budget_flag;
    }
    if (s.budget_env) return parse_count(*s.budget_env, "BIRAT3_BUDGET");
    if (job.options.budget) return *job.options.budget;
    return kDefaultBudget;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json tree_to_json(const ResolutionTree& t) {
    json out;
    out["root"] = model_to_json(t.root);
    out["picard_gain"] = t.picard_gain;
    out["nodes"] = json::array();
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        json pts = json::array();
        for (const auto& p : t.nodes[i].points) pts.push_back(p.str());
        out["nodes"].push_back({{"id", i}, {"points", pts}, {"gdep", t.nodes[i].gdep}, {"dep", t.nodes[i].dep}});
    }
    out["edges"] = json::array();
    for (const auto& e : t.edges) {
        json vals = json::array();
        for (const auto& v : e.valuations) vals.push_back(v ? rat_json(*v) : json(nullptr));
        out["edges"].push_back({{"from", e.from},
                                {"to", e.to},
                                {"point", e.point},
                                {"weight", e.weight.str()},
                                {"discrepancy", rat_json(e.discrepancy)},
                                {"strict", e.strict},
                                {"valuations", vals}});
    }
    return out;
}

std::string emit_dot(const ResolutionTree& t) {
    std::ostringstream os;
    os << "digraph resolution {\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        std::string label;
        for (const auto& p : t.nodes[i].points) label += p.str() + "\n";
        if (t.nodes[i].points.empty()) label = "smooth\n";
        label += "gdep=" + std::to_string(t.nodes[i].gdep);
        os << "  n" << i << " [label=\"" << escape(label) << "\"];\n";
    }
    std::vector<const TreeEdge*> edges;
    for (const auto& e : t.edges) edges.push_back(&e);
    std::sort(edges.begin(), edges.end(),
              [](const TreeEdge* a, const TreeEdge* b) { return std::tie(a->from, a->to) < std::tie(b->from, b->to); });
    for (const TreeEdge* e : edges)
        os << "  n" << e->from << " -> n" << e->to << " [label=\"" << escape(e->weight.str())
           << " a=" << to_string(e->discrepancy) << "\"];\n";
    os << "}\n";
    return os.str();
}

RunOutput run(const JobSpec& job, const RunSettings& s) {
    RunOutput out;
    try {
        DepthOptions opt;
        opt.budget = effective_budget(job, s);
        opt.threads = std::max(1u, s.threads);
        std::string format = s.format_flag.value_or(job.options.format);
        if (format != "json" && format != "dot") throw SchemaError("/options/format", "expected \"json\" or \"dot\"");
        if (format == "dot" && job.command != "resolve")
            throw SchemaError("/options/format", "dot output is only available for resolve");
        json body;
        const std::string& c = job.command;
        if (c == "classify") body = cmd_classify(job);
        else if (c == "blowup") body = cmd_blowup(job);
        else if (c == "wmorphisms") body = cmd_wmorphisms(job);
        else if (c == "depth") body = cmd_depth(job, opt);
        else if (c == "link") body = cmd_link(job);
        else if (c == "flop-charts") body = cmd_flop_charts(job, opt);
        else if (c == "verify-tables") body = cmd_verify_tables(job);
        else if (c == "resolve") {
            ResolutionTree t = feasible_resolution(need_model(job), opt);
            if (format == "dot") {
                out.text = emit_dot(t);
                return out;
            }
            body = tree_to_json(t);
        } else
            throw SchemaError("/command", "unknown command '" + c + "'");
        out.text = dump_json(body);
    } catch (const ValidationFailure& e) {
        json b = e.body;
        b["error"] = error_json("validation", e.what())["error"];
        out = {2, dump_json(b)};
    } catch (const SchemaError& e) {
        out = {2, dump_json(error_json("schema", e.what(), e.pointer))};
    } catch (const BudgetExceeded& e) {
        out = {3, dump_json(error_json("budget", e.what()))};
    } catch (const DepthIncomplete& e) {
        out = {1, dump_json(error_json("incomplete", e.what()))};
    } catch (const std::invalid_argument& e) {
        out = {2, dump_json(error_json("validation", e.what()))};
    } catch (const NotSemiInvariant& e) {
        out = {2, dump_json(error_json("validation", e.what()))};
    } catch (const IntegralityError& e) {
        out = {2, dump_json(error_json("validation", e.what()))};
    } catch (const std::exception& e) {
        out = {1, dump_json(error_json("internal", e.what()))};
    }
    return out;
}

RunOutput run_text(const std::string& text, const RunSettings& s) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        return {2, dump_json(error_json("schema", std::string("invalid JSON: ") + e.what(), "/"))};
    }
    try {
        return run(parse_job(j), s);
    } catch (const SchemaError& e) {
        return {2, dump_json(error_json("schema", e.what(), e.pointer))};
    } catch (const std::invalid_argument& e) {
        return {2, dump_json(error_json("schema", e.what()))};
    }
}

}  // namespace birat3
