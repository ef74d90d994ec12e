#pragma once

#include <lenia_moqd/evolve/engine.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace lenia_moqd::io {

/// Shortest text that reads back to the same double (printf %.17g).
std::string format_double(double v);

/// generations.csv and evaluations.csv of one trial, flushed after every generation.
class TrialLogWriter {
public:
    TrialLogWriter(const std::filesystem::path& generations_csv, const std::filesystem::path& evaluations_csv);

    void append(const evolve::GenerationResult& result);

private:
    std::ofstream generations_;
    std::ofstream evaluations_;
};

inline constexpr const char* kGenerationColumns
    = "generation,archive_size,inserted,mean_f1,mean_f2,mean_f3,mean_fitness,encoder_loss";
inline constexpr const char* kEvaluationColumns = "generation,index,id,valid,f1,f2,f3,fitness,inserted";

/// Header-keyed rows of a simple comma-separated file (no quoting).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Reads generations.csv back into logs; blank encoder_loss stays unset.
std::vector<evolve::GenerationLog> read_generation_log(const std::filesystem::path& path);

} // namespace lenia_moqd::io
