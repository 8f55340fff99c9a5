#pragma once

// Sorted sequence with amortized-constant split and end operations.  Built
// once over contiguous storage; splits hand out index windows onto the same
// shared backing, so a split costs only the search for the boundary.  The
// boundary search probes the middle, then doubles distances from the end of
// the half the middle probe selected, which keeps the comparison count
// logarithmic in the SMALLER result side.

#include <memory>
#include <vector>

#include "error.hpp"
#include "instrument.hpp"

namespace hullkit {

template <typename E, typename Less = std::less<E>>
class SplitArray {
  public:
    SplitArray() : backing_(std::make_shared<std::vector<E>>()), lo_(0), hi_(0) {}

    static SplitArray build(std::vector<E> elems, Less less = Less()) {
        for (std::size_t i = 1; i < elems.size(); ++i) {
            count_inspection();
            if (!less(elems[i - 1], elems[i]))
                throw ContractViolation("SplitArray::build: input not strictly increasing");
        }
        SplitArray s;
        s.less_ = less;
        s.backing_ = std::make_shared<std::vector<E>>(std::move(elems));
        s.lo_ = 0;
        s.hi_ = s.backing_->size();
        return s;
    }

    std::size_t size() const { return hi_ - lo_; }
    bool empty() const { return lo_ == hi_; }

    const E& min() const {
        require_live();
        if (empty()) throw EmptyStructure("SplitArray::min: empty");
        count_record_op();
        return (*backing_)[lo_];
    }

    const E& max() const {
        require_live();
        if (empty()) throw EmptyStructure("SplitArray::max: empty");
        count_record_op();
        return (*backing_)[hi_ - 1];
    }

    E delete_min() {
        require_live();
        if (empty()) throw EmptyStructure("SplitArray::delete_min: empty");
        count_record_op();
        return (*backing_)[lo_++];
    }

    E delete_max() {
        require_live();
        if (empty()) throw EmptyStructure("SplitArray::delete_max: empty");
        count_record_op();
        return (*backing_)[--hi_];
    }

    // Consumes *this; returns (everything <= t, everything > t).
    std::pair<SplitArray, SplitArray> split(const E& t) {
        require_live();
        std::size_t b = boundary(t);  // first index whose element is > t
        SplitArray s1 = window(lo_, b);
        SplitArray s2 = window(b, hi_);
        consumed_ = true;
        return {std::move(s1), std::move(s2)};
    }

  private:
    bool le(const E& a, const E& t) const {  // a <= t
        count_inspection();
        return !less_(t, a);
    }

    // First index in [lo_, hi_) whose element exceeds t.
    std::size_t boundary(const E& t) const {
        if (empty()) return lo_;
        const auto& a = *backing_;
        std::size_t mid = lo_ + (hi_ - 1 - lo_) / 2;  // even windows probe the lower middle
        std::size_t blo, bhi;                         // bracket: a[blo] <= t < a[bhi]
        if (le(a[mid], t)) {
            // boundary in (mid, hi_]: probe hi_-1, hi_-2, hi_-4, ...
            if (mid == hi_ - 1) return hi_;
            std::size_t d = 1;
            while (hi_ - d > mid && !le(a[hi_ - d], t)) d *= 2;
            if (hi_ - d <= mid) {
                blo = mid;
                bhi = hi_ - d / 2;  // previous probe, known > t (d >= 2 here)
            } else if (d == 1) {
                return hi_;  // last element already <= t
            } else {
                blo = hi_ - d;
                bhi = hi_ - d / 2;
            }
        } else {
            // boundary in [lo_, mid]: probe lo_, lo_+1, lo_+3, lo_+7, ...
            if (mid == lo_) return lo_;
            std::size_t d = 1;
            while (lo_ + d - 1 < mid && le(a[lo_ + d - 1], t)) d *= 2;
            if (lo_ + d - 1 >= mid) {
                blo = lo_ + d / 2 - 1;  // previous probe, known <= t (d >= 2 here)
                bhi = mid;
            } else if (d == 1) {
                return lo_;  // first element already > t
            } else {
                blo = lo_ + d / 2 - 1;
                bhi = lo_ + d - 1;
            }
        }
        while (bhi - blo > 1) {
            std::size_t m = blo + (bhi - blo) / 2;
            if (le(a[m], t))
                blo = m;
            else
                bhi = m;
        }
        return bhi;
    }

    SplitArray window(std::size_t lo, std::size_t hi) const {
        SplitArray s;
        s.less_ = less_;
        s.backing_ = backing_;
        s.lo_ = lo;
        s.hi_ = hi;
        return s;
    }

    void require_live() const {
        if (consumed_) throw ContractViolation("SplitArray: used after split");
    }

    Less less_{};
    std::shared_ptr<std::vector<E>> backing_;
    std::size_t lo_, hi_;
    bool consumed_ = false;
};

} // namespace hullkit
