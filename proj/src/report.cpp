#include "ratecomp/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ratecomp/adversary.hpp"
#include "ratecomp/kernels.hpp"

namespace ratecomp {

using nlohmann::json;

bool operator==(const tail_estimate& a, const tail_estimate& b) {
    return a.kind == b.kind && a.value == b.value && a.window_start == b.window_start &&
           a.window_len == b.window_len && a.oscillation == b.oscillation &&
           a.conclusive == b.conclusive;
}

emit_format emit_format_from_string(const std::string& name) {
    if (name == "table") return emit_format::table;
    if (name == "jsonl" || name == "json-lines") return emit_format::json_lines;
    if (name == "csv" || name == "csv-series") return emit_format::csv_series;
    throw input_error("unknown output format: " + name);
}

namespace {

json xreal_to_json(xreal v) {
    if (v.is_infinite()) return json("inf");
    return json(v.value());
}

xreal xreal_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return xreal::infinity();
        throw input_error("bad extended-real value in record");
    }
    return xreal(j.get<double>());
}

json estimate_to_json(const tail_estimate& e) {
    return json{{"kind", to_string(e.kind)},
                {"value", xreal_to_json(e.value)},
                {"window_start", e.window_start},
                {"window_len", e.window_len},
                {"oscillation", e.oscillation},
                {"conclusive", e.conclusive}};
}

tail_estimate estimate_from_json(const json& j) {
    tail_estimate e;
    const std::string kind = j.at("kind").get<std::string>();
    e.kind = kind == "limit" ? tail_kind::limit
                             : kind == "limsup" ? tail_kind::limsup : tail_kind::liminf;
    e.value = xreal_from_json(j.at("value"));
    e.window_start = j.at("window_start").get<std::int64_t>();
    e.window_len = j.at("window_len").get<std::size_t>();
    e.oscillation = j.at("oscillation").get<double>();
    e.conclusive = j.at("conclusive").get<bool>();
    return e;
}

relation relation_from_string(const std::string& s) {
    for (relation r : {relation::left_faster, relation::right_faster, relation::left_better,
                       relation::right_better, relation::same_rate, relation::neither,
                       relation::inconclusive})
        if (to_string(r) == s) return r;
    throw input_error("unknown relation: " + s);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_xreal_csv(xreal v) {
    return v.is_infinite() ? std::string("inf") : fmt_double(v.value());
}

std::string fmt_evidence_brief(const std::vector<tail_estimate>& ev) {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : ev) {
        if (!first) os << "  ";
        first = false;
        os << to_string(e.kind) << "=";
        if (e.value.is_infinite())
            os << "inf";
        else
            os << e.value.value();
        if (e.kind == tail_kind::limit && !e.conclusive) os << "?";
    }
    return os.str();
}

bound_trace load_bound_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, "cannot open bounds file");
    std::vector<double> values;
    double v = 0.0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw config_error(path, "bounds file holds a non-numeric token");
    if (values.empty()) throw config_error(path, "bounds file is empty");
    return bound_trace(1, std::move(values));
}

report_record make_record(const experiment_config& cfg, verdict v,
                          std::string provenance = {},
                          std::vector<std::string> warnings = {}) {
    report_record rec;
    rec.experiment = cfg.name;
    rec.comparator = std::move(v.comparator);
    rec.rel = v.rel;
    rec.evidence = std::move(v.evidence);
    rec.bound_provenance = std::move(provenance);
    rec.truncation_index = v.truncation_index;
    rec.warnings = std::move(warnings);
    rec.notes = std::move(v.notes);
    return rec;
}

std::vector<std::string> synthesis_warnings(const synthesis_report& rep) {
    std::vector<std::string> w;
    if (!rep.input_x_vanishing)
        w.push_back("left error tail has not dropped below zero_tol; the construction "
                    "presumes convergence to the declared limit");
    if (!rep.input_y_vanishing)
        w.push_back("right error tail has not dropped below zero_tol; the construction "
                    "presumes convergence to the declared limit");
    if (rep.reindex_offset != 0)
        w.push_back("inputs re-indexed to start at 1 (offset " +
                    std::to_string(rep.reindex_offset) + ")");
    return w;
}

} // namespace

experiment_result run_experiment(const experiment_config& cfg) {
    auto build = [](const trace_source& src, const char* side) {
        try {
            return std::visit([](const auto& s) { return generate(s); }, src);
        } catch (const generation_error& e) {
            throw config_error(side, e.what());
        } catch (const input_error& e) {
            throw config_error(side, e.what());
        }
    };
    const trace t_left = build(cfg.left, "left");
    const trace t_right = build(cfg.right, "right");
    const error_trace e_left = make_error_trace(t_left, limit_of(cfg.left), metric_of(cfg.left));
    const error_trace e_right =
        make_error_trace(t_right, limit_of(cfg.right), metric_of(cfg.right));

    experiment_result out;

    // Series: aligned errors plus their pointwise ratio.
    {
        const std::int64_t lo = std::max(e_left.start_index, e_right.start_index);
        const std::int64_t hi = std::min(e_left.last_index(), e_right.last_index());
        if (hi < lo) throw config_error(cfg.name, "traces have no index overlap");
        const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
        out.series.start_index = lo;
        const std::size_t ol = static_cast<std::size_t>(lo - e_left.start_index);
        const std::size_t orr = static_cast<std::size_t>(lo - e_right.start_index);
        out.series.e_left.assign(e_left.values.begin() + ol, e_left.values.begin() + ol + n);
        out.series.e_right.assign(e_right.values.begin() + orr,
                                  e_right.values.begin() + orr + n);
        out.series.ratio.resize(n);
        kernels::ratio_map(out.series.e_left, out.series.e_right, out.series.ratio);
    }

    for (const std::string& name : cfg.comparators) {
        if (name == "rhoades") {
            out.records.push_back(make_record(cfg, compare_rhoades(e_left, e_right,
                                                                   cfg.options)));
        } else if (name == "popescu") {
            out.records.push_back(make_record(cfg, compare_popescu(e_left, e_right,
                                                                   cfg.options)));
        } else if (name == "zalinescu") {
            out.records.push_back(make_record(cfg, compare_zalinescu(e_left, e_right,
                                                                     cfg.options)));
        } else if (name == "berinde25") {
            // Def 2.5 runs on the raw 1-d sequences with their claimed limits.
            if (t_left.dimension != 1 || t_right.dimension != 1)
                throw config_error(cfg.name, "berinde25 needs dimension-1 sequences");
            const std::int64_t lo = out.series.start_index;
            const std::size_t n = out.series.e_left.size();
            std::vector<double> a(n), b(n);
            for (std::size_t k = 0; k < n; ++k) {
                a[k] = t_left.at(static_cast<std::size_t>(lo - t_left.start_index) + k)[0];
                b[k] = t_right.at(static_cast<std::size_t>(lo - t_right.start_index) + k)[0];
            }
            out.records.push_back(make_record(
                cfg, compare_berinde_def25(a, b, limit_of(cfg.left)[0],
                                           limit_of(cfg.right)[0], cfg.options)));
        } else if (name == "berinde27") {
            switch (cfg.mode) {
                case bounds_mode::none:
                    throw config_error(cfg.name, "berinde27 needs a bounds_mode");
                case bounds_mode::user_supplied: {
                    const bound_trace bl = load_bound_file(*cfg.bounds_left_file);
                    const bound_trace br = load_bound_file(*cfg.bounds_right_file);
                    out.records.push_back(make_record(
                        cfg, compare_berinde_def27(e_left, e_right, bl, br, cfg.options),
                        "user"));
                    out.series.a_bound = bl.values;
                    out.series.b_bound = br.values;
                    break;
                }
                case bounds_mode::equal: {
                    // Shared-bound reductio: align both sides onto 1..N first.
                    const std::size_t n =
                        std::min(e_left.size(), e_right.size());
                    if (e_left.start_index != 1 || e_right.start_index != 1 || n == 0)
                        throw config_error(cfg.name,
                                           "equal bounds mode needs traces starting at 1");
                    error_trace ex(1, std::vector<double>(e_left.values.begin(),
                                                          e_left.values.begin() + n));
                    error_trace ey(1, std::vector<double>(e_right.values.begin(),
                                                          e_right.values.begin() + n));
                    auto [ba, bb] = synthesize_equal_bounds(ex, ey);
                    verdict v = compare_berinde_def27(ex, ey, ba, bb, cfg.options);
                    v.notes = "shared bound a_n = b_n = e_left + e_right + 1/n; " + v.notes;
                    out.records.push_back(make_record(cfg, std::move(v), "equal"));
                    out.series.a_bound = ba.values;
                    out.series.b_bound = bb.values;
                    break;
                }
                case bounds_mode::prop1_forward:
                case bounds_mode::prop1_reverse: {
                    auto [fwd, rev] = demonstrate_inconsistency(e_left, e_right, cfg.options);
                    report_record fr = make_record(cfg, fwd.berinde_verdict, "prop1-forward",
                                                   synthesis_warnings(fwd));
                    report_record rr = make_record(cfg, rev.berinde_verdict, "prop1-reverse",
                                                   synthesis_warnings(rev));
                    const bool fwd_first = cfg.mode == bounds_mode::prop1_forward;
                    const synthesis_report& primary = fwd_first ? fwd : rev;
                    out.series.a_bound = primary.bounds_for_x.values;
                    out.series.b_bound = primary.bounds_for_y.values;
                    if (fwd_first) {
                        out.records.push_back(std::move(fr));
                        out.records.push_back(std::move(rr));
                    } else {
                        out.records.push_back(std::move(rr));
                        out.records.push_back(std::move(fr));
                    }
                    break;
                }
            }
        }
    }
    return out;
}

std::string record_to_json_line(const report_record& rec) {
    json ev = json::array();
    for (const auto& e : rec.evidence) ev.push_back(estimate_to_json(e));
    const json j{{"schema_version", rec.schema_version},
                 {"experiment", rec.experiment},
                 {"comparator", rec.comparator},
                 {"relation", to_string(rec.rel)},
                 {"evidence", ev},
                 {"bound_provenance", rec.bound_provenance},
                 {"truncation_index", rec.truncation_index},
                 {"warnings", rec.warnings},
                 {"notes", rec.notes}};
    return j.dump();
}

report_record record_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    report_record rec;
    rec.schema_version = j.at("schema_version").get<int>();
    rec.experiment = j.at("experiment").get<std::string>();
    rec.comparator = j.at("comparator").get<std::string>();
    rec.rel = relation_from_string(j.at("relation").get<std::string>());
    for (const auto& e : j.at("evidence")) rec.evidence.push_back(estimate_from_json(e));
    rec.bound_provenance = j.at("bound_provenance").get<std::string>();
    rec.truncation_index = j.at("truncation_index").get<std::int64_t>();
    rec.warnings = j.at("warnings").get<std::vector<std::string>>();
    rec.notes = j.at("notes").get<std::string>();
    return rec;
}

std::string emit(const experiment_result& result, emit_format format) {
    if (result.records.empty() && format != emit_format::csv_series)
        throw input_error("emit: no records");
    std::ostringstream os;
    switch (format) {
        case emit_format::json_lines: {
            for (const auto& rec : result.records) os << record_to_json_line(rec) << "\n";
            break;
        }
        case emit_format::table: {
            std::size_t wcomp = 10, wprov = 10, wrel = 12;
            for (const auto& r : result.records) {
                wcomp = std::max(wcomp, r.comparator.size());
                wprov = std::max(wprov, r.bound_provenance.size());
                wrel = std::max(wrel, to_string(r.rel).size());
            }
            os << result.records.front().experiment << "\n";
            auto pad = [&os](const std::string& s, std::size_t w) {
                os << s << std::string(w - s.size() + 2, ' ');
            };
            pad("comparator", wcomp);
            pad("bounds", wprov);
            pad("relation", wrel);
            os << "evidence\n";
            for (const auto& r : result.records) {
                pad(r.comparator, wcomp);
                pad(r.bound_provenance.empty() ? "-" : r.bound_provenance, wprov);
                pad(to_string(r.rel), wrel);
                os << fmt_evidence_brief(r.evidence);
                if (r.truncation_index >= 0)
                    os << "  [truncated at n=" << r.truncation_index << "]";
                os << "\n";
                for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
            }
            break;
        }
        case emit_format::csv_series: {
            const bool with_bounds = !result.series.a_bound.empty();
            os << "n,e_left,e_right,ratio";
            if (with_bounds) os << ",a_n,b_n";
            os << "\n";
            const auto& s = result.series;
            for (std::size_t k = 0; k < s.e_left.size(); ++k) {
                os << (s.start_index + static_cast<std::int64_t>(k)) << ","
                   << fmt_double(s.e_left[k]) << "," << fmt_double(s.e_right[k]) << ","
                   << fmt_xreal_csv(s.ratio[k]);
                if (with_bounds) {
                    if (k < s.a_bound.size())
                        os << "," << fmt_double(s.a_bound[k]) << ","
                           << fmt_double(s.b_bound[k]);
                    else
                        os << ",,";
                }
                os << "\n";
            }
            break;
        }
    }
    return os.str();
}

int result_exit_code(const experiment_result& result) {
    for (const auto& r : result.records)
        if (r.rel == relation::inconclusive) return 2;
    return 0;
}

} // namespace ratecomp
