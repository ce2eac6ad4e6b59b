#include "quasibell/marginal.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace quasibell {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

// Phase-one tableau: `rows` constraint rows over original + artificial columns,
// plus the reduced-cost row of the artificial objective.
class PhaseOne {
public:
    PhaseOne(const RatMatrix& a, const RatVector& b)
        : m_(a.rows()), n_(a.cols()), width_(a.cols() + a.rows()), tableau_(m_, width_), rhs_(m_), basis_(m_),
          cost_(width_) {
        for (std::size_t i = 0; i < m_; ++i) {
            const bool negate = b[i].sign() < 0;
            for (std::size_t j = 0; j < n_; ++j) tableau_(i, j) = negate ? -a(i, j) : a(i, j);
            tableau_(i, n_ + i) = 1;
            rhs_[i] = negate ? -b[i] : b[i];
            basis_[i] = n_ + i;
        }
        // Reduced costs of minimizing the sum of artificials with all artificials basic.
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t i = 0; i < m_; ++i) cost_[j] -= tableau_(i, j);
        }
        for (std::size_t i = 0; i < m_; ++i) objective_ -= rhs_[i];
    }

    void run() {
        while (true) {
            // Bland: lowest-index column with negative reduced cost enters.
            std::size_t entering = width_;
            for (std::size_t j = 0; j < width_; ++j) {
                if (cost_[j].sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == width_) return;

            // Minimum ratio; ties go to the lowest basic variable index.
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; ++i) {
                if (tableau_(i, entering).sign() <= 0) continue;
                const Rational ratio = rhs_[i] / tableau_(i, entering);
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            // The artificial objective is bounded below by zero.
            if (!leaving) throw std::logic_error("phase-one simplex reported an unbounded direction");
            pivot(*leaving, entering);
        }
    }

    /// Minimum of the sum of artificial variables.
    Rational infeasibility() const { return -objective_; }

    RatVector primal() const {
        RatVector x(n_);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = rhs_[i];
        return x;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        const Rational p = tableau_(row, col);
        for (std::size_t j = 0; j < width_; ++j) {
            if (!tableau_(row, j).is_zero()) tableau_(row, j) /= p;
        }
        rhs_[row] /= p;

        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || tableau_(i, col).is_zero()) continue;
            const Rational factor = tableau_(i, col);
            for (std::size_t j = 0; j < width_; ++j) {
                if (!tableau_(row, j).is_zero()) tableau_(i, j) -= factor * tableau_(row, j);
            }
            rhs_[i] -= factor * rhs_[row];
        }
        if (!cost_[col].is_zero()) {
            const Rational factor = cost_[col];
            for (std::size_t j = 0; j < width_; ++j) {
                if (!tableau_(row, j).is_zero()) cost_[j] -= factor * tableau_(row, j);
            }
            objective_ -= factor * rhs_[row];
        }
        basis_[row] = col;
    }

    std::size_t m_, n_, width_;
    RatMatrix tableau_;
    RatVector rhs_;
    std::vector<std::size_t> basis_;
    RatVector cost_;
    Rational objective_;
};

}  // namespace

MarginalProblem::MarginalProblem(std::vector<Observable> observables, std::vector<MarginalTable> marginals,
                                 std::size_t joint_cap)
    : observables_(std::move(observables)), marginals_(std::move(marginals)) {
    std::set<std::string> names;
    for (const auto& o : observables_) {
        if (o.name.empty()) fail("observable with empty name");
        if (!names.insert(o.name).second) fail("duplicate observable name '" + o.name + "'");
        if (o.cardinality < 2) fail("observable '" + o.name + "' needs cardinality >= 2");
        if (joint_size_ > joint_cap / o.cardinality) {
            throw JointSizeError("joint outcome space exceeds cap of " + std::to_string(joint_cap));
        }
        joint_size_ *= o.cardinality;
    }
    if (joint_size_ > joint_cap) {
        throw JointSizeError("joint outcome space exceeds cap of " + std::to_string(joint_cap));
    }

    for (std::size_t k = 0; k < marginals_.size(); ++k) {
        const auto& m = marginals_[k];
        const std::string where = "marginal #" + std::to_string(k);
        if (m.over.empty()) fail(where + ": empty observable subset");
        std::set<std::size_t> seen;
        std::size_t size = 1;
        for (auto o : m.over) {
            if (o >= observables_.size()) fail(where + ": observable index out of range");
            if (!seen.insert(o).second) fail(where + ": observable listed twice");
            size *= observables_[o].cardinality;
        }
        if (m.table.size() != size) {
            fail(where + ": table has " + std::to_string(m.table.size()) + " entries, expected " +
                 std::to_string(size));
        }
        Rational total;
        for (const auto& p : m.table) {
            if (p.sign() < 0) fail(where + ": negative probability " + p.to_string());
            total += p;
        }
        if (total != Rational(1)) fail(where + ": table sums to " + total.to_string() + ", not 1");
    }
}

std::vector<std::size_t> MarginalProblem::cardinalities() const {
    std::vector<std::size_t> cards;
    cards.reserve(observables_.size());
    for (const auto& o : observables_) cards.push_back(o.cardinality);
    return cards;
}

std::size_t MarginalProblem::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < observables_.size(); ++i)
        if (observables_[i].name == name) return i;
    throw std::out_of_range("unknown observable '" + std::string(name) + "'");
}

std::vector<std::size_t> joint_outcome(std::size_t index, const std::vector<std::size_t>& cardinalities) {
    std::vector<std::size_t> outcome(cardinalities.size());
    for (std::size_t k = cardinalities.size(); k-- > 0;) {
        outcome[k] = index % cardinalities[k];
        index /= cardinalities[k];
    }
    return outcome;
}

ConstraintSystem build_constraint_system(const MarginalProblem& problem, BuildOptions options) {
    const auto cards = problem.cardinalities();
    const std::size_t n = problem.joint_size();

    std::vector<RatVector> rows;
    RatVector rhs;
    for (const auto& m : problem.marginals()) {
        const std::size_t kept = options.drop_redundant ? m.table.size() - 1 : m.table.size();
        const std::size_t first = rows.size();
        for (std::size_t k = 0; k < kept; ++k) {
            rows.emplace_back(n);
            rhs.push_back(m.table[k]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto outcome = joint_outcome(j, cards);
            std::size_t k = 0;
            for (auto o : m.over) k = k * cards[o] + outcome[o];
            if (k < kept) rows[first + k][j] = 1;
        }
    }
    rows.emplace_back(n, Rational(1));
    rhs.push_back(1);

    return {RatMatrix::from_rows(rows), std::move(rhs)};
}

FeasibilityResult lp_feasible(const RatMatrix& matrix, const RatVector& rhs) {
    if (rhs.size() != matrix.rows()) throw std::invalid_argument("lp_feasible: right-hand side length mismatch");

    FeasibilityResult result;
    result.homogeneous_dim = matrix.cols() - rank(matrix);
    if (!solve_consistent(matrix, rhs)) {
        result.status = Verdict::Inconsistent;
        return result;
    }

    PhaseOne simplex(matrix, rhs);
    simplex.run();
    if (!simplex.infeasibility().is_zero()) {
        result.status = Verdict::QuasiOnly;
        return result;
    }
    RatVector x = simplex.primal();
    if (matrix * x != rhs) throw std::logic_error("phase-one simplex produced a point off the constraint set");
    result.status = Verdict::Proper;
    result.witness = std::move(x);
    return result;
}

FeasibilityResult solve_problem(const MarginalProblem& problem, BuildOptions options) {
    const ConstraintSystem system = build_constraint_system(problem, options);
    return lp_feasible(system.matrix, system.rhs);
}

MarginalProblem bell_problem(const BellMarginals<Rational>& marginals) {
    auto flatten = [](const PairTable<Rational>& t) {
        return std::vector<Rational>{t[kPlus][kPlus], t[kPlus][kMinus], t[kMinus][kPlus], t[kMinus][kMinus]};
    };
    std::vector<Observable> observables{{"A", 2}, {"B", 2}, {"C", 2}};
    std::vector<MarginalTable> tables{
        {{1, 2}, flatten(marginals.pbc)},
        {{0, 2}, flatten(marginals.pac)},
        {{0, 1}, flatten(marginals.pab)},
    };
    return MarginalProblem(std::move(observables), std::move(tables));
}

}  // namespace quasibell
