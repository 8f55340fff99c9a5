#pragma once

// Sorted sequence with suspendable boundary searches.
//
// Elements carry two implicit colors supplied by an external oracle: red
// elements form a prefix, blue elements a suffix, and both sets only ever
// shrink while a search is pending.  A split looks for an uncolored element;
// when every element still has a color the search suspends and resumes later
// from the same spot.  The search walks the tree with an end-anchored
// exponential strategy, so a whole suspended episode costs
// O(#calls + log min(left part, right part)) color inspections.
//
// Lifecycle: Open splitters support end insertion/removal; close() freezes
// the sequence and arms the search; a successful split yields two Open
// splitters that share the boundary element (stored in both).  Three-way
// join produces a closed splitter whose pending middle block is drained
// lazily by subsequent splits.

#include <deque>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "error.hpp"
#include "instrument.hpp"
#include "two_four_tree.hpp"

namespace hullkit {

// Convenience coloring for tests and drivers; hot paths pass their own
// struct with inlineable red/blue members instead.
template <typename E>
struct FnColoring {
    std::function<bool(const E&)> red, blue;
};

template <typename E, typename Less = std::less<E>>
class Splitter {
    using Tree = LeafTree<E>;
    using Leaf = typename Tree::Leaf;
    using Node = typename Tree::Node;

  public:
    enum class State { Open, Closed, ClosedJoined };

    struct Parts {
        Splitter left;
        E element;
        Splitter right;
    };

    static_assert(std::is_copy_constructible_v<E>,
                  "Splitter duplicates the boundary element into both parts");

    explicit Splitter(Less less = Less()) : less_(std::move(less)) {}
    Splitter(Splitter&&) = default;
    Splitter& operator=(Splitter&&) = default;

    static Splitter build(std::vector<E> sorted, Less less = Less()) {
        Splitter m(std::move(less));
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            count_predicate();
            if (!m.less_(sorted[i], sorted[i + 1]))
                throw ContractViolation("Splitter::build: input not strictly increasing");
        }
        for (auto& v : sorted) m.tree_.push_back(std::move(v));
        return m;
    }

    State state() const { return phase_; }
    bool empty() const { return tree_.empty() && mid_.empty() && t2_.empty(); }

    // Elements still waiting in a joined middle block (they drain lazily).
    std::size_t pending_middle() const { return mid_.size(); }

    // Linear; diagnostics and tests only.
    std::size_t size() const { return tree_.count() + mid_.size() + t2_.count(); }

    const E& min() const {
        if (!tree_.empty()) return tree_.front()->val;
        if (!mid_.empty()) return mid_.front();
        if (!t2_.empty()) return t2_.front()->val;
        throw EmptyStructure("Splitter::min: empty");
    }

    const E& max() const {
        if (!t2_.empty()) return t2_.back()->val;
        if (!mid_.empty()) return mid_.back();
        if (!tree_.empty()) return tree_.back()->val;
        throw EmptyStructure("Splitter::max: empty");
    }

    // Inserts e before the current minimum or after the current maximum.
    void extend(E e) {
        require_open("extend");
        if (tree_.empty()) {
            tree_.push_back(std::move(e));
            return;
        }
        if (less_(e, tree_.front()->val))
            tree_.push_front(std::move(e));
        else if (less_(tree_.back()->val, e))
            tree_.push_back(std::move(e));
        else
            throw ContractViolation("Splitter::extend: element not outside current range");
        count_record_op();
    }

    E delete_min() {
        require_open("delete_min");
        if (tree_.empty()) throw EmptyStructure("Splitter::delete_min: empty");
        count_record_op();
        return tree_.pop_front();
    }

    E delete_max() {
        require_open("delete_max");
        if (tree_.empty()) throw EmptyStructure("Splitter::delete_max: empty");
        count_record_op();
        return tree_.pop_back();
    }

    // Freezes the sequence and arms the suspended search.  The first probe
    // target is an element at the root, which sits at least 2^(height-1)
    // positions from both ends — that is what anchors the episode cost to
    // the smaller resulting part.
    void close() {
        require_open("close");
        if (tree_.empty()) throw StateViolation("Splitter::close: empty splitter");
        phase_ = State::Closed;
        kind_ = Cur::ReInspect;
        lo_ = hi_ = nullptr;
        if (tree_.single_leaf())
            cur_ = tree_.single_leaf();
        else
            cur_ = Tree::kid_max(tree_.root_node(), 0);
    }

    // Unfreezes the sequence, discarding any suspended search.  A joined
    // splitter materializes first: the pending middle drains into the left
    // part and the right part is concatenated.  Every element moves this way
    // at most once in its lifetime, so the drain is paid for by insertion.
    void reopen() {
        if (phase_ == State::Open) throw StateViolation("Splitter::reopen: already open");
        if (phase_ == State::ClosedJoined) {
            while (!mid_.empty()) {
                tree_.push_back(std::move(mid_.front()));
                mid_.pop_front();
                count_record_op();
            }
            tree_ = Tree::join(std::move(tree_), std::move(t2_));
        }
        reset_open();
    }

    // Resumes the search for an uncolored element.  Returns nothing while
    // every element still carries a color (the cursor persists); otherwise
    // returns the two halves, each containing the boundary element, and
    // leaves this splitter hollow and Open.
    template <typename C>
    std::optional<Parts> split(const C& c) {
        if (phase_ == State::Open) throw StateViolation("Splitter::split: splitter is open");
        if (phase_ == State::ClosedJoined) return split_joined(c);
        switch (kind_) {
            case Cur::ReInspect: {
                Leaf* q = cur_;
                switch (inspect(c, q)) {
                    case Col::None: return make_split(q);
                    case Col::Both: return std::nullopt;
                    case Col::RedOnly: return advance_red(c, q);
                    case Col::BlueOnly: return advance_blue(c, q);
                }
                break;
            }
            case Cur::FirstBlue: {
                Leaf* f = tree_.front();
                switch (inspect(c, f)) {
                    case Col::None: return make_split(f);
                    case Col::RedOnly: return advance_red(c, f);
                    default: return std::nullopt;  // first element blue -> all colored
                }
            }
            case Cur::LastRed: {
                Leaf* b = tree_.back();
                switch (inspect(c, b)) {
                    case Col::None: return make_split(b);
                    case Col::BlueOnly: return advance_blue(c, b);
                    default: return std::nullopt;  // last element red -> all colored
                }
            }
            case Cur::Narrow: {
                Leaf* l = cur_;
                Leaf* r = l->next;
                HK_ASSERT(r != nullptr, "narrow cursor at the end");
                Col cl = inspect(c, l);
                if (cl == Col::None) return make_split(l);
                if (cl != Col::RedOnly)
                    throw ContractViolation("Splitter: coloring regained a color");
                Col cr = inspect(c, r);
                if (cr == Col::None) return make_split(r);
                if (cr != Col::BlueOnly)
                    throw ContractViolation("Splitter: coloring regained a color");
                return std::nullopt;  // adjacent red|blue pair intact
            }
        }
        throw InternalError("Splitter::split: bad cursor");
    }

    // Concatenates m1, mid, m2 into a closed splitter.  m1 starts all
    // red-only and m2 all blue-only, so the eventual boundary element lies
    // in max(m1), mid, min(m2); the middle block is drained lazily.
    static Splitter join(Splitter m1, std::vector<E> mid, Splitter m2) {
        if (m1.phase_ != State::Open || m2.phase_ != State::Open)
            throw StateViolation("Splitter::join: operands must be open");
        Splitter out(m1.less_);
        for (std::size_t i = 0; i + 1 < mid.size(); ++i)
            if (!out.less_(mid[i], mid[i + 1]))
                throw ContractViolation("Splitter::join: middle not strictly increasing");
        const E* left_hi = m1.tree_.empty() ? nullptr : &m1.tree_.back()->val;
        const E* right_lo = m2.tree_.empty() ? nullptr : &m2.tree_.front()->val;
        if (left_hi) {
            const E& nxt = !mid.empty() ? mid.front() : (right_lo ? *right_lo : *left_hi);
            if (&nxt != left_hi && !out.less_(*left_hi, nxt))
                throw ContractViolation("Splitter::join: left part not below middle");
        }
        if (right_lo && !mid.empty() && !out.less_(mid.back(), *right_lo))
            throw ContractViolation("Splitter::join: middle not below right part");
        if (m1.tree_.empty() && mid.empty() && m2.tree_.empty())
            throw ContractViolation("Splitter::join: empty result");
        out.phase_ = State::ClosedJoined;
        if (left_hi) out.jlo_ = *left_hi;
        if (right_lo) out.jhi_ = *right_lo;
        out.tree_ = std::move(m1.tree_);
        out.t2_ = std::move(m2.tree_);
        out.mid_.assign(std::make_move_iterator(mid.begin()), std::make_move_iterator(mid.end()));
        return out;
    }

    // Flat copy of the stored sequence (tests).
    std::vector<E> to_vector() const {
        std::vector<E> out;
        for (Leaf* l = tree_.front(); l; l = l->next) out.push_back(l->val);
        for (const E& e : mid_) out.push_back(e);
        for (Leaf* l = t2_.front(); l; l = l->next) out.push_back(l->val);
        return out;
    }

    void validate() const {
        tree_.validate(less_);
        t2_.validate(less_);
        if (phase_ != State::ClosedJoined)
            HK_ASSERT(mid_.empty() && t2_.empty(), "plain splitter with joined parts");
        auto seq = to_vector();
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            HK_ASSERT(less_(seq[i], seq[i + 1]), "splitter sequence not strictly sorted");
    }

  private:
    enum class Col : unsigned char { None, RedOnly, BlueOnly, Both };
    enum class Cur : unsigned char { ReInspect, FirstBlue, LastRed, Narrow };

    Tree tree_;   // the sequence; in joined state the left part
    Tree t2_;     // joined state: right part
    std::deque<E> mid_;  // joined state: pending middle
    Less less_;
    State phase_ = State::Open;
    Cur kind_ = Cur::ReInspect;
    Leaf* cur_ = nullptr;  // ReInspect: probe target; Narrow: left of the pair
    Leaf* lo_ = nullptr;   // rightmost leaf inspected red-only this episode
    Leaf* hi_ = nullptr;   // leftmost leaf inspected blue-only this episode
    std::optional<E> jlo_, jhi_;  // joined episode: bounds for the boundary element

    Splitter(Tree t, Less less) : tree_(std::move(t)), less_(std::move(less)) {}

    void require_open(const char* op) const {
        if (phase_ != State::Open)
            throw StateViolation(std::string("Splitter::") + op + ": splitter is not open");
    }

    // One color inspection.  Outcomes feed the episode watermarks, which
    // both clip the search to the undecided gap and detect oracles that
    // illegally regain a color.
    template <typename C>
    Col inspect(const C& c, Leaf* l) {
        count_inspection();
        bool r = c.red(l->val);
        bool b = c.blue(l->val);
        if (r && hi_ && !less_(l->val, hi_->val))
            throw ContractViolation("Splitter: red reached a blue-only watermark");
        if (b && lo_ && !less_(lo_->val, l->val))
            throw ContractViolation("Splitter: blue reached a red-only watermark");
        if (r && b) return Col::Both;
        if (r) {
            if (!lo_ || less_(lo_->val, l->val)) lo_ = l;
            return Col::RedOnly;
        }
        if (b) {
            if (!hi_ || less_(l->val, hi_->val)) hi_ = l;
            return Col::BlueOnly;
        }
        return Col::None;
    }

    template <typename C>
    Col inspect_val(const C& c, const E& v) {
        count_inspection();
        bool r = c.red(v);
        bool b = c.blue(v);
        if (r && b) return Col::Both;
        if (r) return Col::RedOnly;
        if (b) return Col::BlueOnly;
        return Col::None;
    }

    std::optional<Parts> suspend(Cur k, Leaf* at) {
        kind_ = k;
        cur_ = at;
        return std::nullopt;
    }

    std::optional<Parts> make_split(Leaf* q) {
        HK_ASSERT(!lo_ || !less_(q->val, lo_->val), "split left of the red watermark");
        HK_ASSERT(!hi_ || !less_(hi_->val, q->val), "split right of the blue watermark");
        auto [t1, t2] = tree_.split_after(q);
        E e = t1.back()->val;
        t2.push_front(e);
        Parts out{Splitter(std::move(t1), less_), std::move(e), Splitter(std::move(t2), less_)};
        reset_open();
        return out;
    }

    void reset_open() {
        phase_ = State::Open;
        kind_ = Cur::ReInspect;
        cur_ = lo_ = hi_ = nullptr;
        jlo_.reset();
        jhi_.reset();
        mid_.clear();
    }

    // Moves the red finger right from a leaf just inspected red-only:
    // climb while the covered prefix stays red, then descend into the node
    // whose range crosses the blue watermark.  With no blue watermark the
    // split may sit arbitrarily close to the back, so probe the back first
    // and continue from there — that anchors the episode cost to the
    // distance from the nearer end rather than to the tree height.
    template <typename C>
    std::optional<Parts> advance_red(const C& c, Leaf* from) {
        if (!hi_) {
            Leaf* b = tree_.back();
            if (b == from) return suspend(Cur::LastRed, nullptr);
            switch (inspect(c, b)) {
                case Col::None: return make_split(b);
                case Col::RedOnly: return suspend(Cur::LastRed, nullptr);
                case Col::Both: return suspend(Cur::ReInspect, b);
                case Col::BlueOnly: return advance_blue(c, b);
            }
            throw InternalError("unreachable");
        }
        Leaf* last_red = from;
        void* walk = from;
        Node* p = from->parent;
        while (true) {
            while (p && walk == p->kids[p->nkids - 1]) {
                count_tree_step();
                walk = p;
                p = p->parent;
            }
            if (!p) return suspend(Cur::LastRed, nullptr);  // from was the last leaf
            Leaf* m = Tree::subtree_max(p);
            if (hi_ && !less_(m->val, hi_->val))
                return descend_red(c, p, Tree::kid_index(p, walk) + 1, last_red);
            switch (inspect(c, m)) {
                case Col::None: return make_split(m);
                case Col::Both: return suspend(Cur::ReInspect, m);
                case Col::RedOnly:
                    last_red = m;
                    walk = p;
                    p = p->parent;
                    break;
                case Col::BlueOnly:
                    return descend_red(c, p, Tree::kid_index(p, walk) + 1, last_red);
            }
        }
    }

    // Top-down refinement between the red finger and the blue watermark.
    template <typename C>
    std::optional<Parts> descend_red(const C& c, Node* p, int k0, Leaf* last_red) {
        while (true) {
            int i = k0;
            bool entered = false;
            for (; i < p->nkids; ++i) {
                Leaf* m = Tree::kid_max(p, i);
                HK_ASSERT(hi_ != nullptr, "red descent without a blue watermark");
                if (!less_(m->val, hi_->val)) {
                    // this child's range reaches the blue watermark
                    if (p->height == 1)
                        return settle_pair(c, static_cast<Leaf*>(p->kids[i]), false, last_red);
                    p = static_cast<Node*>(p->kids[i]);
                    k0 = 0;
                    entered = true;
                    break;
                }
                switch (inspect(c, m)) {
                    case Col::None: return make_split(m);
                    case Col::Both: return suspend(Cur::ReInspect, m);
                    case Col::RedOnly: last_red = m; continue;
                    case Col::BlueOnly:
                        if (p->height == 1) return settle_pair(c, m, true, last_red);
                        p = static_cast<Node*>(p->kids[i]);
                        k0 = 0;
                        entered = true;
                        break;
                }
                if (entered) break;
            }
            HK_ASSERT(entered, "red descent ran past the blue watermark");
        }
    }

    // y is the leftmost leaf known blue-only; verify the adjacent pair or
    // keep moving.  y_fresh: y was inspected blue-only in this call.
    template <typename C>
    std::optional<Parts> settle_pair(const C& c, Leaf* y, bool y_fresh, Leaf* last_red) {
        if (!y_fresh) {
            switch (inspect(c, y)) {
                case Col::None: return make_split(y);
                case Col::BlueOnly: break;
                default: throw ContractViolation("Splitter: coloring regained a color");
            }
        }
        Leaf* l = y->prev;
        if (!l) return suspend(Cur::FirstBlue, nullptr);  // y is the first element
        if (l == last_red) return suspend(Cur::Narrow, l);
        switch (inspect(c, l)) {
            case Col::None: return make_split(l);
            case Col::RedOnly: return suspend(Cur::Narrow, l);
            case Col::Both: return suspend(Cur::ReInspect, l);
            case Col::BlueOnly: return advance_blue(c, l);
        }
        throw InternalError("unreachable");
    }

    template <typename C>
    std::optional<Parts> advance_blue(const C& c, Leaf* from) {
        if (!lo_) {
            Leaf* f = tree_.front();
            if (f == from) return suspend(Cur::FirstBlue, nullptr);
            switch (inspect(c, f)) {
                case Col::None: return make_split(f);
                case Col::BlueOnly: return suspend(Cur::FirstBlue, nullptr);
                case Col::Both: return suspend(Cur::ReInspect, f);
                case Col::RedOnly: return advance_red(c, f);
            }
            throw InternalError("unreachable");
        }
        Leaf* last_blue = from;
        void* walk = from;
        Node* p = from->parent;
        while (true) {
            while (p && walk == p->kids[0]) {
                count_tree_step();
                walk = p;
                p = p->parent;
            }
            if (!p) return suspend(Cur::FirstBlue, nullptr);  // from was the first leaf
            Leaf* m = Tree::subtree_min(p);
            if (lo_ && !less_(lo_->val, m->val))
                return descend_blue(c, p, Tree::kid_index(p, walk) - 1, last_blue);
            switch (inspect(c, m)) {
                case Col::None: return make_split(m);
                case Col::Both: return suspend(Cur::ReInspect, m);
                case Col::BlueOnly:
                    last_blue = m;
                    walk = p;
                    p = p->parent;
                    break;
                case Col::RedOnly:
                    return descend_blue(c, p, Tree::kid_index(p, walk) - 1, last_blue);
            }
        }
    }

    template <typename C>
    std::optional<Parts> descend_blue(const C& c, Node* p, int k0, Leaf* last_blue) {
        while (true) {
            int i = k0;
            bool entered = false;
            for (; i >= 0; --i) {
                Leaf* m = Tree::kid_min(p, i);
                HK_ASSERT(lo_ != nullptr, "blue descent without a red watermark");
                if (!less_(lo_->val, m->val)) {
                    if (p->height == 1)
                        return settle_pair_left(c, static_cast<Leaf*>(p->kids[i]), false,
                                                last_blue);
                    p = static_cast<Node*>(p->kids[i]);
                    k0 = p->nkids - 1;
                    entered = true;
                    break;
                }
                switch (inspect(c, m)) {
                    case Col::None: return make_split(m);
                    case Col::Both: return suspend(Cur::ReInspect, m);
                    case Col::BlueOnly: last_blue = m; continue;
                    case Col::RedOnly:
                        if (p->height == 1) return settle_pair_left(c, m, true, last_blue);
                        p = static_cast<Node*>(p->kids[i]);
                        k0 = p->nkids - 1;
                        entered = true;
                        break;
                }
                if (entered) break;
            }
            HK_ASSERT(entered, "blue descent ran past the red watermark");
        }
    }

    // x is the rightmost leaf known red-only; mirror of settle_pair.
    template <typename C>
    std::optional<Parts> settle_pair_left(const C& c, Leaf* x, bool x_fresh, Leaf* last_blue) {
        if (!x_fresh) {
            switch (inspect(c, x)) {
                case Col::None: return make_split(x);
                case Col::RedOnly: break;
                default: throw ContractViolation("Splitter: coloring regained a color");
            }
        }
        Leaf* r = x->next;
        if (!r) return suspend(Cur::LastRed, nullptr);  // x is the last element
        if (r == last_blue) return suspend(Cur::Narrow, x);
        switch (inspect(c, r)) {
            case Col::None: return make_split(r);
            case Col::BlueOnly: return suspend(Cur::Narrow, x);
            case Col::Both: return suspend(Cur::ReInspect, r);
            case Col::RedOnly: return advance_red(c, r);
        }
        throw InternalError("unreachable");
    }

    // Joined-state split: drain the pending middle while it is red-only,
    // then decide between suspension and a boundary at one of the seams.
    template <typename C>
    std::optional<Parts> split_joined(const C& c) {
        while (!mid_.empty()) {
            Col ce = inspect_val(c, mid_.front());
            if (ce == Col::RedOnly) {
                tree_.push_back(std::move(mid_.front()));
                mid_.pop_front();
                count_record_op();
                continue;
            }
            if (ce == Col::None) {
                E el = std::move(mid_.front());
                mid_.pop_front();
                tree_.push_back(el);
                drain_mid_right();
                t2_.push_front(el);
                return finish_joined(std::move(el));
            }
            // middle front is colored (it has blue); all colored iff the
            // left part still ends red
            if (tree_.empty()) return std::nullopt;
            Col cm = inspect_val(c, tree_.back()->val);
            if (cm == Col::RedOnly) return std::nullopt;
            if (cm != Col::None)
                throw ContractViolation("Splitter: left part regained blue");
            E el = tree_.back()->val;
            drain_mid_right();
            t2_.push_front(el);
            return finish_joined(std::move(el));
        }
        bool h1 = !tree_.empty(), h2 = !t2_.empty();
        HK_ASSERT(h1 || h2, "joined splitter is empty");
        if (h1) {
            Col ca = inspect_val(c, tree_.back()->val);
            if (ca == Col::None) {
                E el = tree_.back()->val;
                t2_.push_front(el);
                return finish_joined(std::move(el));
            }
            if (ca != Col::RedOnly)
                throw ContractViolation("Splitter: left part regained blue");
        }
        if (h2) {
            Col cb = inspect_val(c, t2_.front()->val);
            if (cb == Col::None) {
                E el = t2_.front()->val;
                tree_.push_back(el);
                return finish_joined(std::move(el));
            }
            if (cb != Col::BlueOnly)
                throw ContractViolation("Splitter: right part regained red");
        }
        return std::nullopt;
    }

    void drain_mid_right() {
        while (!mid_.empty()) {
            t2_.push_front(std::move(mid_.back()));
            mid_.pop_back();
            count_record_op();
        }
    }

    std::optional<Parts> finish_joined(E el) {
        HK_ASSERT(!jlo_ || !less_(el, *jlo_), "joined boundary below the left seam");
        HK_ASSERT(!jhi_ || !less_(*jhi_, el), "joined boundary above the right seam");
        Parts out{Splitter(std::move(tree_), less_), std::move(el),
                  Splitter(std::move(t2_), less_)};
        reset_open();
        return out;
    }
};

} // namespace hullkit
