#pragma once

#include <map>
#include <string>
#include <vector>

#include "niep/matrix.hpp"
#include "niep/scalar.hpp"

namespace niep {

/// Addresses one free quantity of a construction. Rows/columns are 1-based
/// to match the usual display conventions.
struct ParamKey {
    enum class Kind { Alpha, Beta, Coupler, LEntry };
    Kind kind = Kind::Alpha;
    int row = 0; // unused for Alpha
    int col = 0;

    friend bool operator<(const ParamKey& a, const ParamKey& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.row != b.row) return a.row < b.row;
        return a.col < b.col;
    }
    friend bool operator==(const ParamKey& a, const ParamKey& b) {
        return a.kind == b.kind && a.row == b.row && a.col == b.col;
    }
    std::string name() const {
        switch (kind) {
            case Kind::Alpha: return "alphas." + std::to_string(col);
            case Kind::Beta: return "beta." + std::to_string(row) + "." + std::to_string(col);
            case Kind::Coupler: return "a." + std::to_string(row) + "." + std::to_string(col);
            case Kind::LEntry: return "l." + std::to_string(row) + "." + std::to_string(col);
        }
        return "?";
    }
};

/// All free quantities of a finished construction, for reporting.
struct RealizationParams {
    std::string strategy;
    std::map<int, Rational> alphas;                  // column -> value
    std::map<std::pair<int, int>, Rational> betas;   // (row, col)
    std::map<std::pair<int, int>, Rational> couplers;
    std::map<std::pair<int, int>, Rational> l_free;
    std::vector<int> cut_indices;
    Rational t;
    std::vector<int> order;                // diagonal order as 1-based indices into sorted σ
    std::map<std::string, std::string> extras; // plan descriptions etc.
};

struct CertLine {
    std::string description;
    Rational margin; // >= 0 when the inequality holds
};

/// The deliverable of every realizer: C = L·A·L⁻¹ exactly, C entrywise
/// nonnegative, plus the parameters and the checked inequalities.
struct Realization {
    Matrix A;
    UnitLower L;
    Matrix C;
    RealizationParams params;
    std::vector<CertLine> certificate;
};

/// Explicit parameter overrides, parsed from --set key=value arguments.
struct Overrides {
    std::map<ParamKey, Rational> params;
    std::map<int, Rational> diag;              // diag.I=V for the prescribed-diagonal strategy
    std::map<std::string, std::string> plan;   // absorb.COL=ROW, chains=...
};

Overrides parse_overrides(const std::vector<std::string>& kvs);

} // namespace niep
