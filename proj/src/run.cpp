#include "niep/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "niep/eigen.hpp"
#include "niep/polynomial.hpp"

namespace niep {

using ordered_json = nlohmann::ordered_json;

Overrides parse_overrides(const std::vector<std::string>& kvs) {
    Overrides ov;
    for (const std::string& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail(ErrKind::Input, "override '" + kv + "' is not key=value");
        std::string key = kv.substr(0, eq);
        std::string val = kv.substr(eq + 1);
        std::vector<std::string> parts;
        std::stringstream ss(key);
        std::string p;
        while (std::getline(ss, p, '.')) parts.push_back(p);
        auto want = [&](std::size_t n) {
            if (parts.size() != n) fail(ErrKind::Input, "bad override key '" + key + "'");
        };
        if (parts[0] == "alphas" || parts[0] == "alpha") {
            want(2);
            ov.params[{ParamKey::Kind::Alpha, 0, std::stoi(parts[1])}] = parse_rational(val);
        } else if (parts[0] == "beta" || parts[0] == "b") {
            want(3);
            ov.params[{ParamKey::Kind::Beta, std::stoi(parts[1]), std::stoi(parts[2])}] = parse_rational(val);
        } else if (parts[0] == "a") {
            want(3);
            ov.params[{ParamKey::Kind::Coupler, std::stoi(parts[1]), std::stoi(parts[2])}] =
                parse_rational(val);
        } else if (parts[0] == "l") {
            want(3);
            ov.params[{ParamKey::Kind::LEntry, std::stoi(parts[1]), std::stoi(parts[2])}] =
                parse_rational(val);
        } else if (parts[0] == "diag") {
            want(2);
            ov.diag[std::stoi(parts[1])] = parse_rational(val);
        } else if (parts[0] == "chains" || parts[0] == "absorb") {
            ov.plan[key] = val;
        } else {
            fail(ErrKind::Input, "unknown override key '" + key + "'");
        }
    }
    return ov;
}

namespace {

std::string fmt(const Rational& q, Mode mode) {
    return mode == Mode::Exact ? format_rational(q) : format_double(to_double(q));
}
std::string fmt(const ExactScalar& s, Mode mode) {
    return mode == Mode::Exact ? format_scalar(s) : format_scalar_float(s);
}

ordered_json matrix_json(const Matrix& m, Mode mode) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(fmt(m(i, j), mode));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

Verification verify_realization(const std::vector<ExactScalar>& spectrum, const Matrix& C, Mode mode,
                                const Rational& tol) {
    Verification v;
    NonnegReport nn = is_nonnegative(C, mode == Mode::Exact ? Rational(0) : tol);
    v.nonnegative = nn.ok;
    bool first = true;
    for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = 0; j < C.size(); ++j)
            if (first || C(i, j).real() < v.min_entry) {
                v.min_entry = C(i, j).real();
                first = false;
            }
    if (mode == Mode::Exact) {
        v.char_poly_match = (char_poly(C) == Polynomial::from_roots(spectrum));
    }
    std::vector<Complex> expect;
    expect.reserve(spectrum.size());
    for (const auto& s : spectrum) expect.push_back(s.to_complex());
    v.eigen_residual = eigen_match_residual(numeric_eigenvalues(C), expect);

    std::vector<Rational> want = spectrum_power_sums(spectrum, static_cast<int>(spectrum.size()));
    std::vector<ExactScalar> got = power_sums_matrix(C, static_cast<int>(spectrum.size()));
    for (std::size_t k = 0; k < want.size(); ++k)
        v.power_sum_residuals.push_back(got[k].real() - want[k]);
    return v;
}

RunReport run(const RunConfig& cfg) {
    RunReport rep;
    try {
        std::string text = cfg.spectrum_text;
        if (!cfg.spectrum_file.empty()) {
            std::ifstream in(cfg.spectrum_file);
            if (!in) fail(ErrKind::Input, "cannot read " + cfg.spectrum_file);
            std::getline(in, text);
        }
        rep.input = parse_spectrum(text);
        rep.input.mode = cfg.mode_forced ? cfg.mode : Mode::Exact;

        rep.classified = classify(rep.input);
        rep.classified_ok = true;
        int jll_k = cfg.jll_k > 0 ? cfg.jll_k : static_cast<int>(rep.classified.n);
        rep.conditions = necessary_conditions(rep.classified, jll_k, cfg.jll_m);
        if (!rep.conditions.power_sums_ok && rep.conditions.power_sums_first_fail == 1)
            fail(ErrKind::InfeasibleAlphas,
                 "necessary condition fails: s1 = " + format_rational(rep.classified.s1) + " < 0");
        if (!rep.conditions.overall)
            rep.diagnostics.push_back("necessary conditions not all satisfied; attempting construction anyway");

        rep.strategy = cfg.strategy.empty() || cfg.strategy == "auto" ? dispatch_strategy(rep.classified)
                                                                      : cfg.strategy;
        Overrides ov = parse_overrides(cfg.sets);
        Rational tol = rep.input.mode == Mode::Exact ? Rational(0) : cfg.tol;
        DispatchResult dr = dispatch_realize(rep.classified, cfg.strategy, ov, tol, cfg.order);
        rep.realization = dr.realization;
        rep.strategy = dr.realization.params.strategy;
        for (auto& d : dr.diagnostics) rep.diagnostics.push_back(d);

        rep.verification =
            verify_realization(rep.classified.all_values(), rep.realization->C, rep.input.mode, cfg.tol);
        bool ok = rep.verification->nonnegative &&
                  (rep.input.mode == Mode::Exact ? rep.verification->char_poly_match.value_or(false)
                                                 : rep.verification->eigen_residual < 1e-8);
        rep.exit_code = ok ? 0 : 2;
        if (!ok) {
            rep.failure_kind = "VerificationFailure";
            rep.failure_message = "realization failed verification";
        }
    } catch (const Error& e) {
        rep.failure_kind = e.kind_name();
        rep.failure_message = e.what();
        rep.exit_code = e.method_level() ? 2 : 1;
    }
    return rep;
}

std::string report_json(const RunReport& r) {
    const Mode mode = r.input.mode;
    ordered_json j;
    {
        ordered_json s;
        s["values"] = ordered_json::array();
        for (const auto& v : r.input.values) s["values"].push_back(fmt(v, mode));
        s["mode"] = mode == Mode::Exact ? "exact" : "float";
        if (r.classified_ok) {
            s["n"] = r.classified.n;
            s["k_pos"] = r.classified.k_pos;
            s["perron"] = fmt(Rational(r.classified.perron), mode);
            s["s1"] = fmt(r.classified.s1, mode);
        }
        j["spectrum"] = s;
    }
    if (r.classified_ok) {
        ordered_json c;
        c["perron_ok"] = r.conditions.perron_ok;
        c["perron_witness"] = r.conditions.perron_witness;
        c["power_sums_ok"] = r.conditions.power_sums_ok;
        if (!r.conditions.power_sums_ok) c["power_sums_first_fail"] = r.conditions.power_sums_first_fail;
        c["jll_ok"] = r.conditions.jll_ok;
        if (!r.conditions.jll_ok) c["jll_fail"] = {r.conditions.jll_fail_k, r.conditions.jll_fail_m};
        c["overall"] = r.conditions.overall;
        j["conditions"] = c;
    }
    j["strategy"] = r.strategy;
    if (r.realization) {
        const RealizationParams& p = r.realization->params;
        ordered_json pj;
        ordered_json alphas;
        for (const auto& [col, v] : p.alphas) alphas[std::to_string(col)] = fmt(v, mode);
        pj["alphas"] = alphas;
        auto pairmap = [&](const std::map<std::pair<int, int>, Rational>& m) {
            ordered_json o;
            for (const auto& [rc, v] : m)
                o[std::to_string(rc.first) + "." + std::to_string(rc.second)] = fmt(v, mode);
            return o;
        };
        pj["betas"] = pairmap(p.betas);
        pj["couplers"] = pairmap(p.couplers);
        pj["l"] = pairmap(p.l_free);
        pj["t"] = fmt(p.t, mode);
        pj["cut_indices"] = p.cut_indices;
        for (const auto& [k, v] : p.extras) pj[k] = v;
        j["params"] = pj;
        j["A"] = matrix_json(r.realization->A, mode);
        j["L"] = matrix_json(r.realization->L.matrix(), mode);
        j["C"] = matrix_json(r.realization->C, mode);
        ordered_json cert = ordered_json::array();
        for (const auto& line : r.realization->certificate)
            cert.push_back({{"check", line.description}, {"margin", fmt(line.margin, mode)}});
        j["certificate"] = cert;
    }
    if (r.verification) {
        ordered_json v;
        v["nonnegative"] = r.verification->nonnegative;
        v["min_entry"] = fmt(r.verification->min_entry, mode);
        if (r.verification->char_poly_match) v["char_poly_match"] = *r.verification->char_poly_match;
        v["eigen_residual"] = r.verification->eigen_residual;
        ordered_json ps = ordered_json::array();
        for (const auto& x : r.verification->power_sum_residuals) ps.push_back(fmt(x, mode));
        v["power_sum_residuals"] = ps;
        j["verification"] = v;
    }
    if (!r.failure_kind.empty()) j["failure"] = {{"kind", r.failure_kind}, {"message", r.failure_message}};
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    j["exit_code"] = r.exit_code;
    return j.dump(2) + "\n";
}

namespace {

void print_matrix(std::ostringstream& out, const Matrix& m, Mode mode) {
    std::vector<std::vector<std::string>> cells(m.size(), std::vector<std::string>(m.size()));
    std::vector<std::size_t> width(m.size(), 0);
    for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t i = 0; i < m.size(); ++i) {
            cells[i][j] = fmt(m(i, j), mode);
            width[j] = std::max(width[j], cells[i][j].size());
        }
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << "  [";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out << "  ";
            out << std::string(width[j] - cells[i][j].size(), ' ') << cells[i][j];
        }
        out << "]\n";
    }
}

} // namespace

std::string report_text(const RunReport& r) {
    const Mode mode = r.input.mode;
    std::ostringstream out;
    out << "spectrum: " << format_spectrum(r.input.values, mode) << "\n";
    if (r.classified_ok) {
        out << "conditions: perron " << (r.conditions.perron_ok ? "ok" : "FAIL") << ", power sums "
            << (r.conditions.power_sums_ok ? "ok" : "FAIL at k=" + std::to_string(r.conditions.power_sums_first_fail))
            << ", JLL " << (r.conditions.jll_ok ? "ok" : "FAIL") << "\n";
    }
    out << "strategy: " << r.strategy << "\n";
    for (const auto& d : r.diagnostics) out << "note: " << d << "\n";
    if (!r.failure_kind.empty()) {
        out << "failure: " << r.failure_kind << ": " << r.failure_message << "\n";
    }
    if (r.realization) {
        out << "A =\n";
        print_matrix(out, r.realization->A, mode);
        out << "L =\n";
        print_matrix(out, r.realization->L.matrix(), mode);
        out << "C =\n";
        print_matrix(out, r.realization->C, mode);
        out << "certificate:\n";
        for (const auto& line : r.realization->certificate)
            out << "  " << line.description << "   margin " << fmt(line.margin, mode) << "\n";
    }
    if (r.verification) {
        out << "verification: nonnegative " << (r.verification->nonnegative ? "yes" : "NO");
        if (r.verification->char_poly_match)
            out << ", char poly " << (*r.verification->char_poly_match ? "match" : "MISMATCH");
        out << ", eigen residual " << format_double(r.verification->eigen_residual) << "\n";
    }
    out << "exit: " << r.exit_code << "\n";
    return out.str();
}

Matrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<ExactScalar>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<ExactScalar> row;
        std::string tok;
        for (char ch : line) {
            if (ch == ' ' || ch == ',' || ch == '\t' || ch == '[' || ch == ']' || ch == '"' || ch == '\r') {
                if (!tok.empty()) {
                    row.push_back(parse_scalar(tok));
                    tok.clear();
                }
            } else {
                tok += ch;
            }
        }
        if (!tok.empty()) row.push_back(parse_scalar(tok));
        if (!row.empty()) rows.push_back(row);
    }
    if (rows.empty()) fail(ErrKind::Input, "empty matrix");
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) fail(ErrKind::Input, "matrix is not square");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

CorpusSummary run_corpus(const std::string& dir) {
    CorpusSummary sum;
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".fix") files.push_back(entry.path());
    }
    if (ec) {
        sum.failures = 1;
        sum.entries.push_back({dir, false, "cannot read directory: " + ec.message()});
        return sum;
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        CorpusEntry e;
        e.file = f.filename().string();
        try {
            std::ifstream in(f);
            if (!in) fail(ErrKind::Input, "cannot open file");
            RunConfig cfg;
            std::string expect_kind;
            Matrix expect_matrix;
            bool have_matrix = false;
            std::string line;
            std::string matrix_text;
            bool in_matrix = false;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty() || line[0] == '#') continue;
                if (in_matrix) {
                    matrix_text += line + "\n";
                    continue;
                }
                if (cfg.spectrum_text.empty() && line.find(':') == std::string::npos) {
                    cfg.spectrum_text = line;
                    continue;
                }
                auto colon = line.find(':');
                if (colon == std::string::npos) fail(ErrKind::Input, "bad fixture line '" + line + "'");
                std::string key = line.substr(0, colon);
                std::string val = line.substr(colon + 1);
                while (!val.empty() && val.front() == ' ') val.erase(val.begin());
                if (key == "strategy") cfg.strategy = val;
                else if (key == "mode") {
                    cfg.mode = val == "float" ? Mode::Float : Mode::Exact;
                    cfg.mode_forced = true;
                } else if (key == "tol") cfg.tol = parse_rational(val);
                else if (key == "set") cfg.sets.push_back(val);
                else if (key == "order") {
                    std::stringstream os(val);
                    std::string tok;
                    while (std::getline(os, tok, ',')) cfg.order.push_back(std::stoi(tok));
                } else if (key == "expect") {
                    if (val.empty()) in_matrix = true;
                    else expect_kind = val;
                } else fail(ErrKind::Input, "unknown fixture key '" + key + "'");
            }
            if (in_matrix) {
                expect_matrix = parse_matrix_text(matrix_text);
                have_matrix = true;
            }
            RunReport rep = run(cfg);
            if (have_matrix) {
                if (!rep.realization) {
                    e.detail = "expected a matrix but run failed: " + rep.failure_kind;
                } else if (rep.input.mode == Mode::Exact) {
                    e.pass = rep.realization->C == expect_matrix;
                    if (!e.pass) e.detail = "matrix differs from expectation";
                } else {
                    double worst = 0;
                    if (expect_matrix.size() != rep.realization->C.size()) {
                        e.detail = "matrix size differs";
                    } else {
                        for (std::size_t i = 0; i < expect_matrix.size(); ++i)
                            for (std::size_t j = 0; j < expect_matrix.size(); ++j)
                                worst = std::max(worst,
                                                 std::abs(rep.realization->C(i, j).to_complex() -
                                                          expect_matrix(i, j).to_complex()));
                        e.pass = worst <= to_double(cfg.tol);
                        if (!e.pass) e.detail = "matrix differs by " + format_double(worst);
                    }
                }
                // every corpus realization must round-trip its spectrum
                if (e.pass && rep.verification) {
                    bool cp = rep.input.mode != Mode::Exact || rep.verification->char_poly_match.value_or(false);
                    if (!cp || rep.verification->eigen_residual > 1e-8) {
                        e.pass = false;
                        e.detail = "spectrum round-trip failed";
                    }
                }
            } else if (expect_kind == "inapplicable") {
                e.pass = rep.exit_code == 2;
                if (!e.pass) e.detail = "expected MethodInapplicable, got exit " + std::to_string(rep.exit_code);
            } else if (expect_kind == "default-order-inapplicable") {
                bool noted = false;
                for (const auto& d : rep.diagnostics)
                    if (d.find("default descending order") != std::string::npos) noted = true;
                e.pass = (rep.exit_code == 2) || (rep.exit_code == 0 && noted && rep.strategy == "permuted");
                if (!e.pass) e.detail = "expected default-order inapplicability, got exit " +
                                        std::to_string(rep.exit_code) + " via " + rep.strategy;
            } else { // "realizable" or no expectation: exit 0 with verification
                e.pass = rep.exit_code == 0;
                if (!e.pass) e.detail = rep.failure_kind + ": " + rep.failure_message;
            }
        } catch (const std::exception& ex) {
            e.pass = false;
            e.detail = ex.what();
        }
        if (!e.pass) ++sum.failures;
        sum.entries.push_back(e);
    }
    return sum;
}

} // namespace niep
