// Command-line front end: data synthesis, noise, decomposition, metrics and
// benchmark sweeps over .dten / .ttc files.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ttk/bench.hpp"
#include "ttk/datagen.hpp"
#include "ttk/decompose.hpp"
#include "ttk/io.hpp"
#include "ttk/metrics.hpp"
#include "ttk/tt.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;
constexpr int exit_numeric = 4;

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument(std::string(what) + ": expected comma-separated positive integers, got \"" +
                                        text + "\"");
        }
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

// Either file type, told apart by its magic.
ttk::DenseTensor load_any(const std::string& path) {
    const auto bytes = ttk::read_file(path);
    if (bytes.size() >= 4 && std::string(bytes.begin(), bytes.begin() + 4) == "TTC1") {
        return ttk::tt_reconstruct(ttk::tt_decode(bytes));
    }
    return ttk::tensor_decode(bytes);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json trace_json(const ttk::Decomposition& d, const std::string& method, const ttk::SketchConfig& cfg) {
    using nlohmann::json;
    json steps = json::array();
    for (const auto& s : d.trace.steps) {
        json j{{"step", s.step},           {"rank", s.rank},       {"rows", s.rows},
               {"cols", s.cols},           {"sketch_cols", s.sketch_cols}, {"clamped", s.clamped},
               {"residual", s.residual},   {"seconds", s.seconds}};
        j["tail"] = s.tail ? json(*s.tail) : json(nullptr);
        steps.push_back(std::move(j));
    }
    json out{{"method", method},
             {"ranks", d.tt.ranks()},
             {"p", cfg.oversampling},
             {"q", cfg.power},
             {"seed", cfg.seed.value},
             {"steps", steps},
             {"residual_sum_sq", d.trace.residual_sum_sq()},
             {"diagnostics", d.trace.diagnostics}};
    out["relative_error"] = d.trace.relative_error ? json(*d.trace.relative_error) : json(nullptr);
    if (method != "svd" && cfg.oversampling >= 2 && !d.trace.steps.empty()) {
        std::size_t rmax = 0;
        for (const auto& s : d.trace.steps) rmax = std::max(rmax, s.rank);
        const auto b = ttk::bound_factors(rmax, cfg.oversampling, cfg.power, d.tt.order());
        out["bounds"] = {{"rank", rmax}, {"eta_rsvd", b.eta_sketch}, {"eta_rbki", b.eta_krylov},
                         {"prefactor", b.prefactor}};
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor-train approximation toolkit"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic tensor");
    synth->require_subcommand(1);
    ttk::SpectrumParams spec;
    std::string synth_out;
    auto* spectrum = synth->add_subcommand("spectrum", "Diagonal-slice tensor with a controlled spectrum");
    spectrum->add_option("--n", spec.n, "Mode size")->required()->check(CLI::PositiveNumber);
    spectrum->add_option("--T", spec.plateau, "Plateau length")->required()->check(CLI::PositiveNumber);
    spectrum->add_option("--D", spec.decay, "Decay exponent")->required();
    spectrum->add_option("-o,--output", synth_out, "Output .dten")->required();

    std::string pf_dims;
    double pf_h = 1.0;
    auto* powerfn = synth->add_subcommand("powerfn", "Power-function tensor");
    powerfn->set_help_flag("--help", "Print this help message and exit");
    powerfn->add_option("--dims", pf_dims, "Mode sizes, comma separated")->required();
    powerfn->add_option("--h", pf_h, "Exponent")->required();
    powerfn->add_option("-o,--output", synth_out, "Output .dten")->required();

    // noise
    auto* noise = app.add_subcommand("noise", "Add white Gaussian noise at a target SNR");
    double snr = 0.0;
    std::uint64_t noise_seed = 0;
    std::string noise_in, noise_out;
    noise->add_option("--snr", snr, "Target SNR in dB")->required();
    noise->add_option("--seed", noise_seed, "Noise seed")->required();
    noise->add_option("-i,--input", noise_in, "Input .dten")->required();
    noise->add_option("-o,--output", noise_out, "Output .dten")->required();

    // decompose
    auto* dec = app.add_subcommand("decompose", "Tensor-train decomposition");
    std::string method_text, ranks_text, dec_in, dec_out, trace_out;
    std::optional<double> epsilon;
    ttk::SketchConfig cfg;
    cfg.oversampling = 2;
    dec->add_option("--method", method_text, "svd | rsvd | rsi | rbki")
        ->required()
        ->check(CLI::IsMember({"svd", "rsvd", "rsi", "rbki"}));
    auto* eps_opt = dec->add_option("--epsilon", epsilon, "Relative accuracy (svd only)");
    auto* ranks_opt = dec->add_option("--ranks", ranks_text, "r1,r2,... or a single rank for every unfolding");
    eps_opt->excludes(ranks_opt);
    dec->add_option("--p", cfg.oversampling, "Oversampling")->capture_default_str();
    dec->add_option("--q", cfg.power, "Power / Krylov depth")->capture_default_str()->check(CLI::PositiveNumber);
    dec->add_option("--seed", cfg.seed.value, "Sketch seed")->capture_default_str();
    dec->add_flag("--svd-truncate", cfg.svd_truncate, "Truncate the sketch basis by its SVD");
    dec->add_flag("--naive-krylov", cfg.naive_krylov, "Build the Krylov basis from raw powers");
    dec->add_flag("--include-zeroth-block", cfg.include_zeroth_block, "Prepend the sketch itself to the Krylov basis");
    dec->add_option("-i,--input", dec_in, "Input .dten")->required();
    dec->add_option("-o,--output", dec_out, "Output .ttc")->required();
    dec->add_option("--trace", trace_out, "Write the sweep trace as JSON");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "Expand a .ttc into a dense tensor");
    std::string rec_in, rec_out;
    rec->add_option("-i,--input", rec_in, "Input .ttc")->required();
    rec->add_option("-o,--output", rec_out, "Output .dten")->required();

    // metrics
    auto* met = app.add_subcommand("metrics", "Relative error and PSNR of an approximation");
    std::string met_ref, met_approx;
    met->add_option("--ref", met_ref, "Reference .dten or .ttc")->required();
    met->add_option("--approx", met_approx, "Approximation .dten or .ttc")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Run a benchmark sweep");
    std::string plan_path, bench_out, format_text = "csv";
    bench->add_option("--plan", plan_path, "Plan JSON")->required();
    bench->add_option("-o,--output", bench_out, "Output records")->required();
    bench->add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (spectrum->parsed()) {
            ttk::tensor_save(ttk::spectrum_decay_tensor(spec), synth_out);
        } else if (powerfn->parsed()) {
            ttk::tensor_save(ttk::power_function_tensor({parse_list(pf_dims, "--dims"), pf_h}), synth_out);
        } else if (noise->parsed()) {
            const auto t = ttk::tensor_load(noise_in);
            ttk::tensor_save(ttk::add_awgn(t, snr, ttk::RngSeed{noise_seed}), noise_out);
        } else if (dec->parsed()) {
            const auto method = *ttk::parse_method(method_text);
            if (epsilon && method != ttk::Method::svd) {
                throw std::invalid_argument("--epsilon is only available with --method svd");
            }
            if (!epsilon && ranks_text.empty()) throw std::invalid_argument("one of --epsilon or --ranks is required");
            const auto t = ttk::tensor_load(dec_in);
            if (!ranks_text.empty()) {
                cfg.ranks = parse_list(ranks_text, "--ranks");
                if (cfg.ranks.size() == 1 && t.order() > 2) cfg.ranks.assign(t.order() - 1, cfg.ranks.front());
            }
            ttk::Decomposition d = epsilon ? ttk::tt_svd(t, ttk::EpsilonTruncation{*epsilon})
                                           : ttk::decompose(method, t, cfg);
            ttk::attach_relative_error(d, t);
            ttk::tt_save(d.tt, dec_out);
            if (!trace_out.empty()) {
                const std::string text = trace_json(d, method_text, cfg).dump(2) + "\n";
                ttk::write_file(trace_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
            }
        } else if (rec->parsed()) {
            ttk::tensor_save(ttk::tt_reconstruct(ttk::tt_load(rec_in)), rec_out);
        } else if (met->parsed()) {
            const auto ref = load_any(met_ref);
            const auto approx = load_any(met_approx);
            std::cout << "rel_err " << g17(ttk::relative_error(ref, approx)) << "\n"
                      << "psnr " << g17(ttk::psnr(ref, approx)) << "\n";
        } else if (bench->parsed()) {
            const auto plan = ttk::load_plan(plan_path);
            const auto records = ttk::run_bench(plan);
            ttk::emit(records, format_text == "json" ? ttk::RecordFormat::json : ttk::RecordFormat::csv, bench_out);
        }
    } catch (const ttk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const ttk::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const ttk::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
    return exit_ok;
}
