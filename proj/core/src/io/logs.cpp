#include <lenia_moqd/io/logs.hpp>

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lenia_moqd::io {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_with_header(const std::filesystem::path& path, const char* header)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << header << '\n';
    return out;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

} // namespace

TrialLogWriter::TrialLogWriter(const std::filesystem::path& generations_csv,
                               const std::filesystem::path& evaluations_csv)
    : generations_(open_with_header(generations_csv, kGenerationColumns)),
      evaluations_(open_with_header(evaluations_csv, kEvaluationColumns))
{
}

void TrialLogWriter::append(const evolve::GenerationResult& result)
{
    const auto& log = result.log;
    generations_ << log.generation << ',' << log.archive_size << ',' << log.inserted << ','
                 << format_double(log.mean_f1) << ',' << format_double(log.mean_f2) << ','
                 << format_double(log.mean_f3) << ',' << format_double(log.mean_fitness) << ','
                 << (log.encoder_loss ? format_double(*log.encoder_loss) : std::string{}) << '\n';
    for (const auto& r : result.records) {
        evaluations_ << r.generation << ',' << r.index << ',' << r.id << ',' << (r.valid ? 1 : 0) << ',';
        if (r.valid)
            evaluations_ << format_double(r.objectives.homeostasis) << ','
                         << format_double(r.objectives.distinctiveness) << ','
                         << format_double(r.objectives.sparsity) << ',' << format_double(r.fitness);
        else
            evaluations_ << ",,,";
        evaluations_ << ',' << (r.inserted ? 1 : 0) << '\n';
    }
    generations_.flush();
    evaluations_.flush();
    if (!generations_ || !evaluations_)
        throw std::runtime_error("failed writing trial logs");
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        return table;
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto cells = split(line);
        if (cells.size() != table.header.size())
            throw std::runtime_error(path.string() + ": row has " + std::to_string(cells.size()) + " cells, expected "
                                     + std::to_string(table.header.size()));
        auto& row = table.rows.emplace_back();
        for (std::size_t i = 0; i < cells.size(); ++i)
            row[table.header[i]] = cells[i];
    }
    return table;
}

std::vector<evolve::GenerationLog> read_generation_log(const std::filesystem::path& path)
{
    std::vector<evolve::GenerationLog> logs;
    for (const auto& row : read_csv(path).rows) {
        evolve::GenerationLog log;
        log.generation = std::stoi(row.at("generation"));
        log.archive_size = std::stoul(row.at("archive_size"));
        log.inserted = std::stoi(row.at("inserted"));
        log.mean_f1 = std::stod(row.at("mean_f1"));
        log.mean_f2 = std::stod(row.at("mean_f2"));
        log.mean_f3 = std::stod(row.at("mean_f3"));
        log.mean_fitness = std::stod(row.at("mean_fitness"));
        if (const auto& loss = row.at("encoder_loss"); !loss.empty())
            log.encoder_loss = std::stod(loss);
        logs.push_back(log);
    }
    return logs;
}

} // namespace lenia_moqd::io
