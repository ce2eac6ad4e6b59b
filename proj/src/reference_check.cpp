#include "quasibell/reference_check.hpp"

#include <algorithm>
#include <string_view>

#include "quasibell/quasi.hpp"

namespace quasibell {

namespace {

RatVector ints(std::initializer_list<long> values) {
    RatVector v;
    for (long x : values) v.emplace_back(x);
    return v;
}

std::string join(const RatVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].to_string();
    }
    return s + ")";
}

}  // namespace

ReferenceFixtures published_fixtures() {
    static constexpr std::string_view kPseudoinverse[8][10] = {
        {"1/4", "-1/8", "-1/8", "1/4", "-1/8", "-1/8", "1/4", "-1/8", "-1/8", "1/8"},
        {"-1/20", "13/40", "1/8", "-1/20", "13/40", "1/8", "7/20", "-3/40", "-3/40", "-1/8"},
        {"-1/20", "1/8", "13/40", "7/20", "-3/40", "-3/40", "-1/20", "13/40", "1/8", "-1/8"},
        {"1/20", "-9/40", "-9/40", "-3/20", "3/8", "-1/40", "-3/20", "3/8", "-1/40", "1/8"},
        {"7/20", "-3/40", "-3/40", "-1/20", "1/8", "13/40", "-1/20", "1/8", "13/40", "-1/8"},
        {"-3/20", "3/8", "-1/40", "1/20", "-9/40", "-9/40", "-3/20", "-1/40", "3/8", "1/8"},
        {"-3/20", "-1/40", "3/8", "-3/20", "-1/40", "3/8", "1/20", "-9/40", "-9/40", "1/8"},
        {"-1/4", "-3/8", "-3/8", "-1/4", "-3/8", "-3/8", "-1/4", "-3/8", "-3/8", "7/8"},
    };

    ReferenceFixtures f;
    f.rank = 7;
    f.kernel = ints({-1, 1, 1, -1, 1, -1, -1, 1});
    f.left_kernel = {
        ints({-1, -1, 0, 0, 0, 0, 1, 0, 1, 0}),
        ints({0, 0, 0, -1, -1, 0, 1, 1, 0, 0}),
        ints({-1, 0, -1, 1, 0, 1, 0, 0, 0, 0}),
    };
    f.pseudoinverse = RatMatrix(8, 10);
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 10; ++c) f.pseudoinverse(r, c) = Rational::parse(kPseudoinverse[r][c]);
    return f;
}

bool CheckReport::all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed; });
}

CheckReport run_reference_check(const ReferenceFixtures& fixtures) {
    const RatMatrix m = build_matrix();
    CheckReport report;

    const std::size_t r = rank(m);
    report.items.push_back({"rank", r == fixtures.rank,
                            "computed " + std::to_string(r) + ", expected " + std::to_string(fixtures.rank)});

    const auto kernel = null_space(m);
    const bool kernel_ok = same_span(kernel, {fixtures.kernel});
    report.items.push_back({"null_space", kernel_ok,
                            "computed basis " + (kernel.empty() ? std::string("(empty)") : join(kernel.front())) +
                                (kernel.size() > 1 ? " (+" + std::to_string(kernel.size() - 1) + " more)" : "") +
                                (kernel_ok ? " spans " : " does not span ") + join(fixtures.kernel)});

    const auto left = left_null_space(m);
    const bool left_ok = same_span(left, fixtures.left_kernel);
    report.items.push_back({"left_null_space", left_ok,
                            "computed dimension " + std::to_string(left.size()) +
                                (left_ok ? ", same span as the " : ", span differs from the ") +
                                std::to_string(fixtures.left_kernel.size()) + " listed vectors"});

    const RatMatrix pinv = pseudoinverse(m);
    CheckItem item{"pseudoinverse", true, ""};
    if (pinv.rows() != fixtures.pseudoinverse.rows() || pinv.cols() != fixtures.pseudoinverse.cols()) {
        item.passed = false;
        item.detail = "shape mismatch";
    } else {
        std::size_t mismatches = 0;
        std::string listing;
        for (std::size_t i = 0; i < pinv.rows(); ++i) {
            for (std::size_t j = 0; j < pinv.cols(); ++j) {
                if (pinv(i, j) == fixtures.pseudoinverse(i, j)) continue;
                ++mismatches;
                listing += "; (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") computed " +
                           pinv(i, j).to_string() + ", expected " + fixtures.pseudoinverse(i, j).to_string();
            }
        }
        const std::size_t total = pinv.rows() * pinv.cols();
        item.passed = mismatches == 0;
        item.detail = std::to_string(total - mismatches) + "/" + std::to_string(total) + " entries match" +
                      (mismatches ? ", " + std::to_string(mismatches) + " mismatch" + (mismatches > 1 ? "es" : "") +
                                        listing
                                  : "");
    }
    report.items.push_back(std::move(item));
    return report;
}

}  // namespace quasibell
