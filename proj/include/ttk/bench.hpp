#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ttk/datagen.hpp"
#include "ttk/decompose.hpp"

namespace ttk {

struct FileDataset {
    std::filesystem::path path;
};
using DatasetSpec = std::variant<SpectrumParams, PowerFnParams, FileDataset>;

/// Comma-free identifier used in the dataset column, e.g. "powerfn:20x20x20:h5".
std::string dataset_id(const DatasetSpec& spec);
DenseTensor materialize(const DatasetSpec& spec);

struct BenchPlan {
    DatasetSpec dataset;
    std::vector<std::string> methods;
    std::vector<std::vector<std::size_t>> ranks;  // one entry per sweep point
    std::size_t oversampling = 0;
    std::vector<std::size_t> power;  // q sweep
    std::vector<std::uint64_t> seeds;
    std::vector<std::optional<double>> snr_db;  // nullopt = noise free
    std::size_t repetitions = 1;
    bool svd_truncate = false;
    bool naive_krylov = false;
    bool include_zeroth_block = false;
};

/// Parses the JSON plan format documented in the README. A bare integer in
/// "ranks" means the same rank for every unfolding.
BenchPlan parse_plan(const std::string& json_text);
BenchPlan load_plan(const std::filesystem::path& path);

struct BenchRecord {
    std::string method;
    std::string dataset;
    std::vector<std::size_t> ranks;
    std::size_t p = 0;
    std::size_t q = 0;
    std::uint64_t seed = 0;
    std::optional<double> snr_db;
    double rel_err = 0.0;  // NaN marks a failed cell
    std::optional<double> psnr;
    double wall_time_s = 0.0;
    double trace_sum_sq = 0.0;

    bool failed() const { return rel_err != rel_err; }
};

/// Field-wise equality treating NaN as equal to NaN.
bool same_record(const BenchRecord& a, const BenchRecord& b);

using MethodFn = std::function<Decomposition(const DenseTensor&, const SketchConfig&)>;
using MethodRegistry = std::map<std::string, MethodFn>;

const MethodRegistry& default_methods();

/// Noise seed for a cell; distinct from the per-unfolding sketch seeds.
RngSeed noise_seed(std::uint64_t seed);

/// Runs every (snr, seed, rank, q, method) cell. Noise is drawn once per
/// (snr, seed) and shared by all methods of that cell; metrics are taken
/// against the clean tensor; wall time covers the decomposition call only
/// and is the minimum over repetitions. Failed cells yield NaN rows and the
/// sweep continues. Records come back sorted.
std::vector<BenchRecord> run_bench(const BenchPlan& plan, const MethodRegistry& methods = default_methods());
std::vector<BenchRecord> run_bench(const BenchPlan& plan, const DenseTensor& clean, const std::string& dataset,
                                   const MethodRegistry& methods = default_methods());

enum class RecordFormat { csv, json };

inline constexpr const char* csv_header =
    "method,dataset,ranks,p,q,seed,snr_db,rel_err,psnr,wall_time_s,trace_sum_sq";

std::string format_records(const std::vector<BenchRecord>& records, RecordFormat format);
void emit(const std::vector<BenchRecord>& records, RecordFormat format, const std::filesystem::path& path);

std::vector<BenchRecord> parse_records(const std::string& text, RecordFormat format);
std::vector<BenchRecord> load_records(const std::filesystem::path& path, RecordFormat format);

std::string ranks_string(const std::vector<std::size_t>& ranks);

/// Median of the values (mean of the two middle ones for even counts).
double median(std::vector<double> values);

}  // namespace ttk
