#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "randflight/rational.hpp"

namespace randflight::coeffs {

/** The sequence {C(c,m)} for a fixed collision count c, m = 0..m_max.
    C(c,m) is the coefficient of x^m in (sum_{i=0..m} x^i/(2i+1))^(c+1);
    equivalently the sum over compositions i_1+...+i_{c+1} = m of
    prod 1/(2 i_k + 1). Entries are exact, strictly positive, values[0] = 1. */
struct CoefficientRow {
    int c = 0;
    std::vector<ExactRational> values;  // index m

    [[nodiscard]] int m_max() const { return static_cast<int>(values.size()) - 1; }
};

/// Exact C(c,m). Total on c >= 0, m >= 0.
ExactRational c_coeff(int c, int m);

/** Whole row via repeated truncated polynomial multiplication (binary
    exponentiation, degree capped at m_max) rather than per-entry nested sums. */
CoefficientRow c_coeff_row(int c, int m_max);

/// Combinatorial bracket: binom(m+c,m)/(2m/(c+1)+1)^(c+1) <= C(c,m) <= binom(m+c,m)/(2m+1).
std::pair<ExactRational, ExactRational> c_bounds(int c, int m);

/** Process-wide memo of coefficient rows. Returns a row with m_max() >= m_max;
    rows are immutable once published and safe to share across threads. */
std::shared_ptr<const CoefficientRow> shared_row(int c, int m_max);

}  // namespace randflight::coeffs
