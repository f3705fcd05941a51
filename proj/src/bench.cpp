#include "ttk/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "ttk/io.hpp"
#include "ttk/metrics.hpp"

namespace ttk {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double parse_double(const std::string& s, const char* field) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw std::invalid_argument(std::string("record field ") + field + ": not a number: \"" + s + "\"");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& s, const char* field) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument(std::string("record field ") + field + ": not an unsigned integer: \"" + s +
                                    "\"");
    }
    return std::stoull(s);
}

std::vector<std::size_t> parse_ranks(const std::string& s) {
    std::vector<std::size_t> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t x = s.find('x', start);
        out.push_back(parse_u64(s.substr(start, x - start), "ranks"));
        if (x == std::string::npos) break;
        start = x + 1;
    }
    return out;
}

std::string dims_id(const Dims& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += "x";
        s += std::to_string(dims[i]);
    }
    return s;
}

}  // namespace

std::string ranks_string(const std::vector<std::size_t>& ranks) { return dims_id(ranks); }

std::string dataset_id(const DatasetSpec& spec) {
    if (const auto* s = std::get_if<SpectrumParams>(&spec)) {
        return "spectrum:n" + std::to_string(s->n) + ":T" + std::to_string(s->plateau) + ":D" + fmt_short(s->decay);
    }
    if (const auto* p = std::get_if<PowerFnParams>(&spec)) {
        return "powerfn:" + dims_id(p->dims) + ":h" + fmt_short(p->h);
    }
    std::string name = std::get<FileDataset>(spec).path.filename().string();
    std::replace(name.begin(), name.end(), ',', '_');
    return "file:" + name;
}

DenseTensor materialize(const DatasetSpec& spec) {
    if (const auto* s = std::get_if<SpectrumParams>(&spec)) return spectrum_decay_tensor(*s);
    if (const auto* p = std::get_if<PowerFnParams>(&spec)) return power_function_tensor(*p);
    return tensor_load(std::get<FileDataset>(spec).path);
}

namespace {

template <typename T>
std::vector<T> scalar_or_list(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("plan: missing key \"") + key + "\"");
    const json& v = j.at(key);
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
}

BenchPlan plan_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw std::invalid_argument("plan: top level must be an object");
    BenchPlan plan;

    const json& ds = j.at("dataset");
    const std::string kind = ds.at("kind").get<std::string>();
    if (kind == "spectrum") {
        plan.dataset = SpectrumParams{ds.at("n").get<std::size_t>(), ds.at("T").get<std::size_t>(),
                                      ds.at("D").get<double>()};
    } else if (kind == "powerfn") {
        plan.dataset = PowerFnParams{ds.at("dims").get<Dims>(), ds.at("h").get<double>()};
    } else if (kind == "file") {
        std::filesystem::path p = ds.at("path").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        plan.dataset = FileDataset{p};
    } else {
        throw std::invalid_argument("plan: unknown dataset kind \"" + kind + "\"");
    }

    plan.methods = j.at("methods").get<std::vector<std::string>>();
    for (const json& r : j.at("ranks")) {
        if (r.is_array()) {
            plan.ranks.push_back(r.get<std::vector<std::size_t>>());
        } else {
            plan.ranks.push_back({r.get<std::size_t>()});
        }
    }
    plan.oversampling = j.value("p", std::size_t{0});
    plan.power = j.contains("q") ? scalar_or_list<std::size_t>(j, "q") : std::vector<std::size_t>{1};
    plan.seeds = scalar_or_list<std::uint64_t>(j, "seeds");

    const json snr = j.value("snr_db", json(nullptr));
    const auto snr_item = [](const json& v) -> std::optional<double> {
        if (v.is_null()) return std::nullopt;
        return v.get<double>();
    };
    if (snr.is_array()) {
        for (const json& v : snr) plan.snr_db.push_back(snr_item(v));
    } else {
        plan.snr_db.push_back(snr_item(snr));
    }
    plan.repetitions = j.value("repetitions", std::size_t{1});
    plan.svd_truncate = j.value("svd_truncate", false);
    plan.naive_krylov = j.value("naive_krylov", false);
    plan.include_zeroth_block = j.value("include_zeroth_block", false);
    return plan;
}

void check_plan(const BenchPlan& plan, const MethodRegistry& methods) {
    if (plan.methods.empty()) throw std::invalid_argument("plan: empty method list");
    if (plan.ranks.empty()) throw std::invalid_argument("plan: empty rank sweep");
    if (plan.power.empty()) throw std::invalid_argument("plan: empty q sweep");
    if (plan.seeds.empty()) throw std::invalid_argument("plan: empty seed list");
    if (plan.snr_db.empty()) throw std::invalid_argument("plan: empty snr sweep");
    if (plan.repetitions < 1) throw std::invalid_argument("plan: repetitions must be >= 1");
    for (const auto& m : plan.methods) {
        if (!methods.contains(m)) throw std::invalid_argument("plan: unknown method \"" + m + "\"");
    }
    for (const auto& r : plan.ranks) {
        if (r.empty()) throw std::invalid_argument("plan: empty rank entry");
    }
}

}  // namespace

BenchPlan parse_plan(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("plan: ") + e.what(), e.byte);
    }
    try {
        return plan_from_json(j, std::filesystem::current_path());
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("plan: ") + e.what());
    }
}

BenchPlan load_plan(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    json j;
    try {
        j = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError("plan " + path.string() + ": " + e.what(), e.byte);
    }
    try {
        return plan_from_json(j, path.parent_path());
    } catch (const json::exception& e) {
        throw std::invalid_argument("plan " + path.string() + ": " + e.what());
    }
}

bool same_record(const BenchRecord& a, const BenchRecord& b) {
    const auto eq = [](double x, double y) { return (x != x && y != y) || x == y; };
    const auto eq_opt = [&](const std::optional<double>& x, const std::optional<double>& y) {
        return x.has_value() == y.has_value() && (!x || eq(*x, *y));
    };
    return a.method == b.method && a.dataset == b.dataset && a.ranks == b.ranks && a.p == b.p && a.q == b.q &&
           a.seed == b.seed && eq_opt(a.snr_db, b.snr_db) && eq(a.rel_err, b.rel_err) && eq_opt(a.psnr, b.psnr) &&
           eq(a.wall_time_s, b.wall_time_s) && eq(a.trace_sum_sq, b.trace_sum_sq);
}

const MethodRegistry& default_methods() {
    static const MethodRegistry registry = [] {
        MethodRegistry r;
        for (Method m : {Method::svd, Method::rsvd, Method::rsi, Method::rbki}) {
            r.emplace(std::string(method_name(m)),
                      [m](const DenseTensor& t, const SketchConfig& cfg) { return decompose(m, t, cfg); });
        }
        return r;
    }();
    return registry;
}

RngSeed noise_seed(std::uint64_t seed) { return derive_seed(RngSeed{seed}, 0x6e6f697365ULL); }

std::vector<BenchRecord> run_bench(const BenchPlan& plan, const MethodRegistry& methods) {
    check_plan(plan, methods);
    return run_bench(plan, materialize(plan.dataset), dataset_id(plan.dataset), methods);
}

std::vector<BenchRecord> run_bench(const BenchPlan& plan, const DenseTensor& clean, const std::string& dataset,
                                   const MethodRegistry& methods) {
    check_plan(plan, methods);
    const std::size_t order = clean.order();
    std::vector<BenchRecord> records;

    for (const auto& snr : plan.snr_db) {
        for (std::uint64_t seed : plan.seeds) {
            const DenseTensor input = snr ? add_awgn(clean, *snr, noise_seed(seed)) : clean;
            for (const auto& rank_entry : plan.ranks) {
                std::vector<std::size_t> ranks = rank_entry;
                if (ranks.size() == 1 && order > 2) ranks.assign(order - 1, rank_entry.front());
                for (std::size_t q : plan.power) {
                    SketchConfig cfg;
                    cfg.ranks = ranks;
                    cfg.oversampling = plan.oversampling;
                    cfg.power = q;
                    cfg.seed = RngSeed{seed};
                    cfg.svd_truncate = plan.svd_truncate;
                    cfg.naive_krylov = plan.naive_krylov;
                    cfg.include_zeroth_block = plan.include_zeroth_block;

                    for (const auto& name : plan.methods) {
                        BenchRecord rec;
                        rec.method = name;
                        rec.dataset = dataset;
                        rec.ranks = ranks;
                        rec.p = plan.oversampling;
                        rec.q = q;
                        rec.seed = seed;
                        rec.snr_db = snr;
                        try {
                            const MethodFn& fn = methods.at(name);
                            std::optional<Decomposition> result;
                            double best = std::numeric_limits<double>::infinity();
                            for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
                                const auto start = std::chrono::steady_clock::now();
                                Decomposition d = fn(input, cfg);
                                const auto stop = std::chrono::steady_clock::now();
                                best = std::min(best, std::chrono::duration<double>(stop - start).count());
                                if (!result) result = std::move(d);
                            }
                            const DenseTensor approx = tt_reconstruct(result->tt);
                            rec.rel_err = relative_error(clean, approx);
                            rec.psnr = psnr(clean, approx);
                            rec.wall_time_s = std::max(best, 1e-9);
                            rec.trace_sum_sq = result->trace.residual_sum_sq();
                        } catch (const std::exception& e) {
                            std::cerr << "bench: " << name << " ranks " << ranks_string(ranks) << " seed " << seed
                                      << " failed: " << e.what() << "\n";
                            rec.rel_err = std::numeric_limits<double>::quiet_NaN();
                            rec.psnr.reset();
                            rec.wall_time_s = std::numeric_limits<double>::quiet_NaN();
                            rec.trace_sum_sq = std::numeric_limits<double>::quiet_NaN();
                        }
                        records.push_back(std::move(rec));
                    }
                }
            }
        }
    }

    std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        const double sa = a.snr_db.value_or(std::numeric_limits<double>::infinity());
        const double sb = b.snr_db.value_or(std::numeric_limits<double>::infinity());
        return std::tie(a.method, a.ranks, a.q, sa, a.seed) < std::tie(b.method, b.ranks, b.q, sb, b.seed);
    });
    return records;
}

std::string format_records(const std::vector<BenchRecord>& records, RecordFormat format) {
    std::ostringstream out;
    if (format == RecordFormat::csv) {
        out << csv_header << "\n";
        for (const auto& r : records) {
            out << r.method << ',' << r.dataset << ',' << ranks_string(r.ranks) << ',' << r.p << ',' << r.q << ','
                << r.seed << ',' << (r.snr_db ? fmt17(*r.snr_db) : "") << ',' << fmt17(r.rel_err) << ','
                << (r.psnr ? fmt17(*r.psnr) : "") << ',' << fmt17(r.wall_time_s) << ',' << fmt17(r.trace_sum_sq)
                << "\n";
        }
        return out.str();
    }

    // Hand-written so every float carries exactly 17 significant digits;
    // non-finite values become strings and absent optionals become null.
    const auto num = [](double v) {
        const std::string s = fmt17(v);
        return std::isfinite(v) ? s : "\"" + s + "\"";
    };
    const auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("null"); };
    out << "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << (i ? ",\n " : "\n ") << "{\"method\":" << json(r.method).dump() << ",\"dataset\":"
            << json(r.dataset).dump() << ",\"ranks\":\"" << ranks_string(r.ranks) << "\",\"p\":" << r.p
            << ",\"q\":" << r.q << ",\"seed\":" << r.seed << ",\"snr_db\":" << opt(r.snr_db)
            << ",\"rel_err\":" << num(r.rel_err) << ",\"psnr\":" << opt(r.psnr)
            << ",\"wall_time_s\":" << num(r.wall_time_s) << ",\"trace_sum_sq\":" << num(r.trace_sum_sq) << "}";
    }
    out << (records.empty() ? "]\n" : "\n]\n");
    return out.str();
}

void emit(const std::vector<BenchRecord>& records, RecordFormat format, const std::filesystem::path& path) {
    const std::string text = format_records(records, format);
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double json_number(const json& v, const char* field) {
    if (v.is_string()) return parse_double(v.get<std::string>(), field);
    if (!v.is_number()) throw std::invalid_argument(std::string("record field ") + field + ": expected a number");
    return v.get<double>();
}

std::optional<double> json_optional(const json& v, const char* field) {
    if (v.is_null()) return std::nullopt;
    return json_number(v, field);
}

}  // namespace

std::vector<BenchRecord> parse_records(const std::string& text, RecordFormat format) {
    std::vector<BenchRecord> out;
    if (format == RecordFormat::csv) {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != csv_header) {
            throw std::invalid_argument("records: missing or unexpected CSV header");
        }
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            const auto f = split_csv_line(line);
            if (f.size() != 11) {
                throw std::invalid_argument("records: line " + std::to_string(lineno) + " has " +
                                            std::to_string(f.size()) + " fields, expected 11");
            }
            BenchRecord r;
            r.method = f[0];
            r.dataset = f[1];
            r.ranks = parse_ranks(f[2]);
            r.p = parse_u64(f[3], "p");
            r.q = parse_u64(f[4], "q");
            r.seed = parse_u64(f[5], "seed");
            if (!f[6].empty()) r.snr_db = parse_double(f[6], "snr_db");
            r.rel_err = parse_double(f[7], "rel_err");
            if (!f[8].empty()) r.psnr = parse_double(f[8], "psnr");
            r.wall_time_s = parse_double(f[9], "wall_time_s");
            r.trace_sum_sq = parse_double(f[10], "trace_sum_sq");
            out.push_back(std::move(r));
        }
        return out;
    }

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("records: ") + e.what(), e.byte);
    }
    if (!j.is_array()) throw std::invalid_argument("records: JSON must be an array");
    for (const json& o : j) {
        BenchRecord r;
        r.method = o.at("method").get<std::string>();
        r.dataset = o.at("dataset").get<std::string>();
        r.ranks = parse_ranks(o.at("ranks").get<std::string>());
        r.p = o.at("p").get<std::size_t>();
        r.q = o.at("q").get<std::size_t>();
        r.seed = o.at("seed").get<std::uint64_t>();
        r.snr_db = json_optional(o.at("snr_db"), "snr_db");
        r.rel_err = json_number(o.at("rel_err"), "rel_err");
        r.psnr = json_optional(o.at("psnr"), "psnr");
        r.wall_time_s = json_number(o.at("wall_time_s"), "wall_time_s");
        r.trace_sum_sq = json_number(o.at("trace_sum_sq"), "trace_sum_sq");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BenchRecord> load_records(const std::filesystem::path& path, RecordFormat format) {
    const auto bytes = read_file(path);
    return parse_records(std::string(bytes.begin(), bytes.end()), format);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: no values");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace ttk
