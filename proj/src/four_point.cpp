#include "mtk/four_point.hpp"

#ifdef MTK_HAVE_OPENMP
#include <omp.h>
#endif

namespace mtk {

namespace {

struct Candidate {
    Rat excess = -1; // below any real excess, so the first quadruple always wins
    std::array<int, 4> quad{0, 0, 0, 0};

    bool better_than(const Candidate& other) const {
        if (excess != other.excess)
            return excess > other.excess;
        return quad < other.quad;
    }
};

// Evaluate one multiset i <= j <= k <= l. The reported quadruple orders the
// winning pairing as (x,y,u,v) with d(x,y)+d(u,v) the largest sum and is the
// lexicographically smallest such ordering.
Candidate scan_multiset(const FiniteMetricSpace& s, int i, int j, int k, int l) {
    Rat p1 = s.d(i, j) + s.d(k, l);
    Rat p2 = s.d(i, k) + s.d(j, l);
    Rat p3 = s.d(i, l) + s.d(j, k);

    Candidate c;
    std::array<int, 4> q1{i, j, k, l}, q2{i, k, j, l}, q3{i, l, j, k};
    const Rat* best = &p1;
    c.quad = q1;
    if (p2 > *best || (p2 == *best && q2 < c.quad)) {
        best = &p2;
        c.quad = q2;
    }
    if (p3 > *best || (p3 == *best && q3 < c.quad)) {
        best = &p3;
        c.quad = q3;
    }
    Rat second = -1;
    for (const Rat* p : {&p1, &p2, &p3})
        if (p != best && *p > second)
            second = *p;
    c.excess = *best - second;
    return c;
}

Candidate scan_range(const FiniteMetricSpace& space, int i_begin, int i_end) {
    const int n = space.size();
    Candidate best;
    for (int i = i_begin; i < i_end; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                for (int l = k; l < n; ++l) {
                    Candidate c = scan_multiset(space, i, j, k, l);
                    if (c.better_than(best))
                        best = c;
                }
    return best;
}

FourPointReport to_report(const Candidate& c) {
    FourPointReport report;
    report.excess = c.excess < 0 ? Rat(0) : c.excess;
    report.holds = report.excess == 0;
    report.worst_quadruple = c.quad;
    return report;
}

} // namespace

FourPointReport four_point_report_serial(const FiniteMetricSpace& space) {
    return to_report(scan_range(space, 0, space.size()));
}

FourPointReport four_point_report_parallel(const FiniteMetricSpace& space) {
#ifdef MTK_HAVE_OPENMP
    const int n = space.size();
    Candidate best;
#pragma omp parallel
    {
        Candidate local;
#pragma omp for schedule(dynamic, 1) nowait
        for (int i = 0; i < n; ++i) {
            Candidate c = scan_range(space, i, i + 1);
            if (c.better_than(local))
                local = c;
        }
#pragma omp critical(mtk_four_point_merge)
        {
            // The comparison is a total order, so the merge result does not
            // depend on thread arrival order.
            if (local.better_than(best))
                best = local;
        }
    }
    return to_report(best);
#else
    return four_point_report_serial(space);
#endif
}

FourPointReport four_point_report(const FiniteMetricSpace& space) {
#ifdef MTK_HAVE_OPENMP
    if (space.size() >= 16)
        return four_point_report_parallel(space);
#endif
    return four_point_report_serial(space);
}

} // namespace mtk
