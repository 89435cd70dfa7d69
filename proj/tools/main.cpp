// niep — construct nonnegative matrices with a prescribed spectrum via
// unit lower triangular similarity, with exact rational certificates.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "niep/eigen.hpp"
#include "niep/polynomial.hpp"
#include "niep/run.hpp"

using namespace niep;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& mode, std::string& order) {
    cmd->add_option("--spectrum", cfg.spectrum_text, "spectrum as a comma/space separated list");
    cmd->add_option("--file", cfg.spectrum_file, "file whose first line is the spectrum");
    cmd->add_option("--mode", mode, "exact|float (default: exact)")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tol", cfg.tol, "float-mode tolerance (default 1e-9)")
        ->transform([](std::string s) { return s; });
    cmd->add_option("--format", cfg.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--jll-k", cfg.jll_k, "JLL k bound (default n)");
    cmd->add_option("--jll-m", cfg.jll_m, "JLL m bound (default 3)");
    cmd->add_option("--order", order, "diagonal order as 1-based indices into the sorted spectrum");
    cmd->add_option("--set", cfg.sets, "parameter override key=value (repeatable)");
    cmd->add_option("--strategy", cfg.strategy,
                    "auto|one-positive|prescribed-diagonal|two-positive|k-positive|two-negative|"
                    "three-negative|k-negative|complex-3|complex-4|complex-general");
}

RunConfig finish_config(RunConfig cfg, const std::string& mode, const std::string& order,
                        const std::string& tol_text) {
    if (!mode.empty()) {
        cfg.mode = mode == "float" ? Mode::Float : Mode::Exact;
        cfg.mode_forced = true;
    }
    if (!tol_text.empty()) cfg.tol = parse_rational(tol_text);
    if (!order.empty()) {
        std::stringstream ss(order);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.order.push_back(std::stoi(tok));
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonnegative inverse eigenvalue solver via unit lower triangular similarity"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string mode_text, order_text, tol_text;

    auto* realize = app.add_subcommand("realize", "construct a nonnegative realization");
    add_common(realize, cfg, mode_text, order_text);
    realize->add_option("--tolerance", tol_text)->group("");

    auto* check = app.add_subcommand("check", "evaluate the necessary conditions only");
    add_common(check, cfg, mode_text, order_text);

    auto* verify = app.add_subcommand("verify", "verify a given matrix against a spectrum");
    std::string matrix_file;
    add_common(verify, cfg, mode_text, order_text);
    verify->add_option("--matrix", matrix_file, "file with matrix rows")->required();

    auto* corpus = app.add_subcommand("corpus", "run a directory of fixture files");
    std::string corpus_dir;
    corpus->add_option("dir", corpus_dir, "fixture directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (corpus->parsed()) {
            CorpusSummary sum = run_corpus(corpus_dir);
            std::size_t w = 0;
            for (const auto& e : sum.entries) w = std::max(w, e.file.size());
            for (const auto& e : sum.entries)
                std::cout << e.file << std::string(w + 2 - e.file.size(), ' ')
                          << (e.pass ? "pass" : "FAIL") << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
            std::cout << sum.entries.size() << " fixtures, " << sum.failures << " failures\n";
            return sum.failures == 0 ? 0 : 1;
        }

        cfg = finish_config(cfg, mode_text, order_text, tol_text);

        if (check->parsed()) {
            cfg.strategy = "check-only";
            RunReport rep;
            rep.input = parse_spectrum(cfg.spectrum_text);
            rep.input.mode = cfg.mode_forced ? cfg.mode : Mode::Exact;
            rep.classified = classify(rep.input);
            rep.classified_ok = true;
            int jll_k = cfg.jll_k > 0 ? cfg.jll_k : static_cast<int>(rep.classified.n);
            rep.conditions = necessary_conditions(rep.classified, jll_k, cfg.jll_m);
            rep.strategy = "check";
            rep.exit_code = rep.conditions.overall ? 0 : 1;
            std::cout << (cfg.format == "json" ? report_json(rep) : report_text(rep));
            return rep.exit_code;
        }

        if (verify->parsed()) {
            SpectrumInput in = parse_spectrum(cfg.spectrum_text);
            in.mode = cfg.mode_forced ? cfg.mode : Mode::Exact;
            std::ifstream mf(matrix_file);
            if (!mf) {
                std::cerr << "cannot read " << matrix_file << "\n";
                return 1;
            }
            std::stringstream buf;
            buf << mf.rdbuf();
            Matrix M = parse_matrix_text(buf.str());
            Verification v = verify_realization(in.values, M, in.mode,
                                                in.mode == Mode::Exact ? Rational(0) : cfg.tol);
            bool ok = v.nonnegative && (in.mode == Mode::Exact ? v.char_poly_match.value_or(false)
                                                               : v.eigen_residual < 1e-8);
            nlohmann::ordered_json j;
            j["nonnegative"] = v.nonnegative;
            j["min_entry"] = in.mode == Mode::Exact ? format_rational(v.min_entry)
                                                    : format_double(to_double(v.min_entry));
            if (v.char_poly_match) j["char_poly_match"] = *v.char_poly_match;
            j["eigen_residual"] = v.eigen_residual;
            j["verified"] = ok;
            std::cout << j.dump(2) << "\n";
            return ok ? 0 : 1;
        }

        RunReport rep = run(cfg);
        std::cout << (cfg.format == "json" ? report_json(rep) : report_text(rep));
        return rep.exit_code;
    } catch (const Error& e) {
        std::cerr << e.kind_name() << ": " << e.what() << "\n";
        return e.method_level() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
