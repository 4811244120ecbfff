#pragma once

#include <filesystem>
#include <vector>

#include "aisrec/experiment.hpp"

namespace aisrec {

enum class ExportFormat {
    Csv,
    Json,
};

// CSV layout (stable column order, one file per table):
//   trials.csv                       per-trial rows
//   regime_summary.csv               per-regime metric means/medians/stddevs
//   wilcoxon_mae.csv, wilcoxon_tau.csv   the six regime-pair tests
//   characteristics.csv              the four neighbourhood characteristics
//   composition.csv                  common/unique neighbour means
//   scatter_<characteristic>.csv     per-trial characteristic vs tau
// JSON writes the same content as a single results.json.
// Doubles are written in shortest round-trip form, so export -> reparse ->
// re-export is byte-identical.
void export_results(const ExperimentResult& result, const std::filesystem::path& dir,
                    ExportFormat format);

// Reads trials.csv back into trial outcomes (member id sets are not part of
// the export and stay empty). The summary can be recomputed via summarize().
std::vector<TrialOutcome> load_trials_csv(const std::filesystem::path& file);

void export_sweep(const std::vector<SweepPoint>& points,
                  const std::filesystem::path& dir, ExportFormat format);

}  // namespace aisrec
