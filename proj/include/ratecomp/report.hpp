#pragma once

#include <string>
#include <vector>

#include "ratecomp/config.hpp"

namespace ratecomp {

/// One comparator outcome, flattened for emission. Reruns of the same
/// config reproduce every field bit for bit.
struct report_record {
    int schema_version = config_schema_version;
    std::string experiment;
    std::string comparator;            // rhoades | berinde25 | berinde27 | popescu | zalinescu
    relation rel = relation::inconclusive;
    std::vector<tail_estimate> evidence;
    std::string bound_provenance;      // "", user, prop1-forward, prop1-reverse, equal
    std::int64_t truncation_index = -1;
    std::vector<std::string> warnings;
    std::string notes;

    friend bool operator==(const report_record&, const report_record&) = default;
};

bool operator==(const tail_estimate&, const tail_estimate&);

/// Per-index series for external plotting; a_bound/b_bound are filled when
/// a bounds mode produced them.
struct series_data {
    std::int64_t start_index = 1;
    std::vector<double> e_left;
    std::vector<double> e_right;
    std::vector<xreal> ratio;
    std::vector<double> a_bound;
    std::vector<double> b_bound;
};

struct experiment_result {
    std::vector<report_record> records;
    series_data series;
};

/// Generates both traces, derives error traces, and applies the selected
/// comparators. Under a prop1-* bounds mode the berinde27 comparator emits
/// the forward/reverse record pair (requested direction first). Errors from
/// generation or validation are tagged with the failing side.
experiment_result run_experiment(const experiment_config& cfg);

enum class emit_format { table, json_lines, csv_series };

emit_format emit_format_from_string(const std::string& name);

/// Renders a result. table: aligned human-readable summary. json-lines: one
/// record per line with fixed keys. csv-series: per-index columns
/// n,e_left,e_right,ratio[,a_n,b_n].
std::string emit(const experiment_result& result, emit_format format);

/// json-lines <-> record conversions (round-trip exact).
std::string record_to_json_line(const report_record& rec);
report_record record_from_json_line(const std::string& line);

/// 0 when every verdict is conclusive, 2 when at least one is inconclusive.
int result_exit_code(const experiment_result& result);

} // namespace ratecomp
