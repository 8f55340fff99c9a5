#pragma once

// Leaf-oriented (2,4)-tree over an ordered sequence.  The tree itself is
// ordering-agnostic: callers position insertions explicitly and search with
// monotone predicates, so one implementation serves splitters, envelope
// trees, and hull queues.
//
// Internal nodes carry separator copies of element values.  Separators are
// installed when a child's maximum is first routed past them and are allowed
// to go stale after deletions ("ghosts"): a ghost still bounds everything to
// its left from above, which is all the descent needs.  This keeps every
// structural operation free of whole-spine cache maintenance, so end inserts
// and erases stay amortized constant.
//
// Leaves are doubly linked (the level links used by every cursor walk);
// internal navigation uses parent pointers and child arrays.

#include <utility>
#include <vector>

#include "error.hpp"
#include "instrument.hpp"

namespace hullkit {

template <typename T>
class LeafTree {
  public:
    struct Node;

    struct Leaf {
        Node* parent = nullptr;
        Leaf* prev = nullptr;
        Leaf* next = nullptr;
        T val;
        explicit Leaf(T v) : val(std::move(v)) {}
    };

    // Internal node.  kids holds Leaf* at height 1, Node* above; a fifth
    // slot exists only transiently during splits.
    struct Node {
        Node* parent = nullptr;
        int height = 1;  // leaves sit at height 0
        int nkids = 0;
        void* kids[5] = {};
        T sep[4];  // sep[i] >= everything under kids[0..i]; may be a ghost

        Node() = default;
    };

    LeafTree() = default;
    LeafTree(const LeafTree&) = delete;
    LeafTree& operator=(const LeafTree&) = delete;
    LeafTree(LeafTree&& o) noexcept { *this = std::move(o); }
    LeafTree& operator=(LeafTree&& o) noexcept {
        if (this != &o) {
            clear();
            root_ = std::exchange(o.root_, nullptr);
            single_ = std::exchange(o.single_, nullptr);
            first_ = std::exchange(o.first_, nullptr);
            last_ = std::exchange(o.last_, nullptr);
        }
        return *this;
    }
    ~LeafTree() { clear(); }

    bool empty() const { return first_ == nullptr; }
    Leaf* front() const { return first_; }
    Leaf* back() const { return last_; }

    void clear() {
        for (Leaf* l = first_; l != nullptr;) {
            Leaf* n = l->next;
            delete l;
            l = n;
        }
        destroy_nodes(root_);
        root_ = nullptr;
        single_ = nullptr;
        first_ = last_ = nullptr;
    }

    static LeafTree build(std::vector<T> sorted) {
        LeafTree t;
        for (auto& v : sorted) t.push_back(std::move(v));
        return t;
    }

    Leaf* push_back(T v) {
        if (empty()) return init_single(std::move(v));
        return insert_adjacent(last_, std::move(v), /*after=*/true);
    }

    Leaf* push_front(T v) {
        if (empty()) return init_single(std::move(v));
        return insert_adjacent(first_, std::move(v), /*after=*/false);
    }

    Leaf* insert_after(Leaf* pos, T v) { return insert_adjacent(pos, std::move(v), true); }
    Leaf* insert_before(Leaf* pos, T v) { return insert_adjacent(pos, std::move(v), false); }

    // Last leaf for which pred(value) holds, assuming pred is monotone
    // (true on a prefix); nullptr when pred fails everywhere.
    template <typename Pred>
    Leaf* partition_point(Pred pred) const {
        if (empty()) return nullptr;
        if (single_) return pred(single_->val) ? single_ : nullptr;
        Node* n = root_;
        while (n->height > 1) {
            int i = 0;
            while (i < n->nkids - 1 && pred(n->sep[i])) ++i;
            count_tree_step();
            n = static_cast<Node*>(n->kids[i]);
        }
        // height-1 node: children are leaves; scan directly
        Leaf* best = nullptr;
        for (int i = 0; i < n->nkids; ++i) {
            Leaf* l = static_cast<Leaf*>(n->kids[i]);
            count_tree_step();
            if (pred(l->val))
                best = l;
            else
                break;
        }
        if (best) return best;
        Leaf* lm = static_cast<Leaf*>(n->kids[0]);
        return lm->prev;  // boundary lies in the previous subtree (ghost routed us one off)
    }

    void erase(Leaf* l) {
        if (single_ == l) {
            delete l;
            single_ = nullptr;
            first_ = last_ = nullptr;
            return;
        }
        if (l->prev) l->prev->next = l->next;
        if (l->next) l->next->prev = l->prev;
        if (first_ == l) first_ = l->next;
        if (last_ == l) last_ = l->prev;
        Node* p = l->parent;
        remove_kid(p, l);
        delete l;
        fix_underflow(p);
    }

    T pop_front() {
        if (empty()) throw EmptyStructure("LeafTree::pop_front: empty");
        Leaf* l = first_;
        T v = std::move(l->val);
        erase(l);
        return v;
    }

    T pop_back() {
        if (empty()) throw EmptyStructure("LeafTree::pop_back: empty");
        Leaf* l = last_;
        T v = std::move(l->val);
        erase(l);
        return v;
    }

    // Max leaf of the subtree rooted at n (right-spine walk; counted as tree
    // steps, performs no element inspections itself).
    static Leaf* subtree_max(Node* n) {
        void* c = n->kids[n->nkids - 1];
        int h = n->height;
        while (h > 1) {
            count_tree_step();
            Node* m = static_cast<Node*>(c);
            c = m->kids[m->nkids - 1];
            h = m->height;
        }
        return static_cast<Leaf*>(c);
    }

    static Leaf* subtree_min(Node* n) {
        void* c = n->kids[0];
        int h = n->height;
        while (h > 1) {
            count_tree_step();
            Node* m = static_cast<Node*>(c);
            c = m->kids[0];
            h = m->height;
        }
        return static_cast<Leaf*>(c);
    }

    Node* root_node() const { return root_; }
    Leaf* single_leaf() const { return single_; }

    static Leaf* kid_max(Node* p, int i) {
        if (p->height == 1) return static_cast<Leaf*>(p->kids[i]);
        return subtree_max(static_cast<Node*>(p->kids[i]));
    }

    static Leaf* kid_min(Node* p, int i) {
        if (p->height == 1) return static_cast<Leaf*>(p->kids[i]);
        return subtree_min(static_cast<Node*>(p->kids[i]));
    }

    static int kid_index(Node* p, void* kid) {
        for (int i = 0; i < p->nkids; ++i)
            if (p->kids[i] == kid) return i;
        throw InternalError("internal: kid not under parent");
    }

    // Splits so that leaves up to and including l go left, the rest right.
    // *this is left empty.  Cost O(log n).
    std::pair<LeafTree, LeafTree> split_after(Leaf* l) {
        LeafTree left, right;
        if (empty()) return {std::move(left), std::move(right)};
        HK_ASSERT(l != nullptr, "split_after: null leaf");
        // Collect right-hand leaves/subtrees by carving the path to the root.
        if (l == last_) {
            left = std::move(*this);
            return {std::move(left), std::move(right)};
        }
        // Build forests of subtrees strictly left / strictly right of the
        // path, each ordered nearest-the-path first (heights non-decreasing).
        std::vector<std::pair<void*, int>> lparts, rparts;  // (subtree, height)
        Leaf* boundary_next = l->next;
        Node* p = l->parent;
        void* walk = l;
        lparts.push_back({l, 0});
        while (p) {
            int idx = kid_index(p, walk);
            for (int i = idx - 1; i >= 0; --i) lparts.push_back({p->kids[i], p->height - 1});
            for (int i = idx + 1; i < p->nkids; ++i) rparts.push_back({p->kids[i], p->height - 1});
            walk = p;
            p = p->parent;
        }
        // Sever leaf links on the boundary.
        l->next = nullptr;
        boundary_next->prev = nullptr;
        // Dispose of the old internal skeleton: every node on the path was
        // emptied into the part lists.
        free_path_nodes(l);
        Leaf* old_first = first_;
        Leaf* old_last = last_;
        root_ = nullptr;
        single_ = nullptr;
        first_ = last_ = nullptr;
        // Reassemble each side by folding its forest with joins.
        left = assemble(lparts, /*nearest_is_right=*/true, old_first, l);
        right = assemble(rparts, /*nearest_is_right=*/false, boundary_next, old_last);
        return {std::move(left), std::move(right)};
    }

    // Concatenates a then b (caller guarantees ordering).  Both consumed.
    static LeafTree join(LeafTree a, LeafTree b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        Leaf* af = a.first_;
        Leaf* al = a.last_;
        Leaf* bf = b.first_;
        Leaf* bl = b.last_;
        al->next = bf;
        bf->prev = al;
        auto [ra, ha] = a.release_root();
        auto [rb, hb] = b.release_root();
        auto [r, h] = join_roots(ra, ha, rb, hb, al->val);
        LeafTree out;
        out.adopt(r, h, af, bl);
        return out;
    }

    // Number of leaves (linear; for tests and rebuild sizing).
    std::size_t count() const {
        std::size_t c = 0;
        for (Leaf* l = first_; l; l = l->next) ++c;
        return c;
    }

    // Structural invariants; throws InternalError on violation.  Ordering is
    // checked against the supplied comparator (strict weak order on T).
    template <typename Less>
    void validate(Less less) const {
        if (empty()) {
            HK_ASSERT(!root_ && !single_ && !first_ && !last_, "empty tree with leftovers");
            return;
        }
        if (single_) {
            HK_ASSERT(!root_ && first_ == single_ && last_ == single_, "single leaf wiring");
            HK_ASSERT(!single_->prev && !single_->next, "single leaf links");
            return;
        }
        HK_ASSERT(root_ && !root_->parent, "root parent");
        HK_ASSERT(root_->nkids >= 2, "root width");
        Leaf* walk_first = nullptr;
        Leaf* walk_last = nullptr;
        validate_node(root_, less, walk_first, walk_last);
        HK_ASSERT(walk_first == first_ && walk_last == last_, "end fingers");
        std::size_t via_links = 0;
        for (Leaf* l = first_; l; l = l->next) {
            if (l->next) {
                HK_ASSERT(l->next->prev == l, "leaf link symmetry");
                HK_ASSERT(less(l->val, l->next->val), "leaf order");
            }
            ++via_links;
        }
        HK_ASSERT(via_links == count(), "leaf count");
    }

  private:
    Node* root_ = nullptr;     // null when 0 or 1 leaves
    Leaf* single_ = nullptr;   // the lone leaf when size == 1
    Leaf* first_ = nullptr;
    Leaf* last_ = nullptr;

    Leaf* init_single(T v) {
        single_ = new Leaf(std::move(v));
        first_ = last_ = single_;
        return single_;
    }

    void adopt(void* root, int height, Leaf* f, Leaf* l) {
        first_ = f;
        last_ = l;
        if (height == 0) {
            single_ = static_cast<Leaf*>(root);
            single_->parent = nullptr;
            root_ = nullptr;
        } else {
            root_ = static_cast<Node*>(root);
            root_->parent = nullptr;
            single_ = nullptr;
        }
    }

    std::pair<void*, int> release_root() {
        std::pair<void*, int> out;
        if (single_)
            out = {single_, 0};
        else
            out = {root_, root_->height};
        root_ = nullptr;
        single_ = nullptr;
        first_ = last_ = nullptr;
        return out;
    }

    static void set_parent(void* kid, int kid_height, Node* p) {
        if (kid_height == 0)
            static_cast<Leaf*>(kid)->parent = p;
        else
            static_cast<Node*>(kid)->parent = p;
    }

    // Max value currently under kids[0..i] is bounded by sep[i]; when a new
    // separator is needed we copy from the max leaf of the left child.
    static T boundary_value(void* kid, int kid_height) {
        if (kid_height == 0) return static_cast<Leaf*>(kid)->val;
        return subtree_max(static_cast<Node*>(kid))->val;
    }

    Leaf* insert_adjacent(Leaf* pos, T v, bool after) {
        Leaf* nl = new Leaf(std::move(v));
        // leaf-list splice
        if (after) {
            nl->prev = pos;
            nl->next = pos->next;
            pos->next = nl;
            if (nl->next)
                nl->next->prev = nl;
            else
                last_ = nl;
        } else {
            nl->next = pos;
            nl->prev = pos->prev;
            pos->prev = nl;
            if (nl->prev)
                nl->prev->next = nl;
            else
                first_ = nl;
        }
        if (single_) {
            // grow to a real two-leaf tree
            Node* r = new Node();
            r->height = 1;
            r->nkids = 2;
            Leaf* lkid = after ? pos : nl;
            Leaf* rkid = after ? nl : pos;
            r->kids[0] = lkid;
            r->kids[1] = rkid;
            r->sep[0] = lkid->val;
            lkid->parent = r;
            rkid->parent = r;
            root_ = r;
            single_ = nullptr;
            return nl;
        }
        Node* p = pos->parent;
        insert_kid(p, pos, nl, after);
        rebracket_up(nl);
        fix_overflow(p);
        return nl;
    }

    // A leaf inserted at the edge of a subtree can escape the (possibly
    // ghost) separators bracketing that subtree in its ancestors: the stale
    // bound sits anywhere between the old edge value and the neighbouring
    // subtree, and the new leaf lands in the same gap.  Rewrite the first
    // separator crossed in each direction with the exact new boundary; the
    // walk ascends only while the leaf is still the subtree's edge, and a
    // global end insert skips the escaped direction entirely, so end
    // operations stay amortized constant.
    void rebracket_up(Leaf* nl) {
        bool right_open = nl->next != nullptr;  // nl may top a prefix
        bool left_open = nl->prev != nullptr;   // nl may bottom a suffix
        void* walk = nl;
        Node* a = nl->parent;
        while (a && (right_open || left_open)) {
            count_tree_step();
            int j = kid_index(a, walk);
            if (right_open && j < a->nkids - 1) {
                a->sep[j] = nl->val;
                right_open = false;
            }
            if (left_open && j > 0) {
                a->sep[j - 1] = nl->prev->val;
                left_open = false;
            }
            walk = a;
            a = a->parent;
        }
    }

    // Inserts kid `nk` next to `ref` inside p (may overflow p to 5 kids).
    // Bracketing separators around nk are left for rebracket_up to rewrite.
    void insert_kid(Node* p, void* ref, void* nk, bool after) {
        int idx = kid_index(p, ref) + (after ? 1 : 0);
        for (int i = p->nkids; i > idx; --i) p->kids[i] = p->kids[i - 1];
        // shift separators: sep[i] bounds kids[0..i]
        for (int i = p->nkids - 1; i >= idx && i >= 1; --i) p->sep[i] = p->sep[i - 1];
        p->kids[idx] = nk;
        set_parent(nk, p->height - 1, p);
        ++p->nkids;
        count_tree_step();
    }

    void fix_overflow(Node* p) {
        while (p && p->nkids == 5) {
            count_tree_step();
            Node* right = new Node();
            right->height = p->height;
            // 5 -> 3 + 2
            right->nkids = 2;
            right->kids[0] = p->kids[3];
            right->kids[1] = p->kids[4];
            right->sep[0] = p->sep[3];
            set_parent(right->kids[0], p->height - 1, right);
            set_parent(right->kids[1], p->height - 1, right);
            p->nkids = 3;
            Node* gp = p->parent;
            if (!gp) {
                Node* r = new Node();
                r->height = p->height + 1;
                r->nkids = 2;
                r->kids[0] = p;
                r->kids[1] = right;
                r->sep[0] = p->sep[2];
                p->parent = r;
                right->parent = r;
                root_ = r;
                return;
            }
            int idx = kid_index(gp, p);
            for (int i = gp->nkids; i > idx + 1; --i) gp->kids[i] = gp->kids[i - 1];
            for (int i = gp->nkids - 1; i >= idx + 1; --i) gp->sep[i] = gp->sep[i - 1];
            gp->kids[idx + 1] = right;
            right->parent = gp;
            ++gp->nkids;
            gp->sep[idx] = p->sep[2];
            p = gp;
        }
    }

    void remove_kid(Node* p, void* kid) {
        int idx = kid_index(p, kid);
        for (int i = idx; i < p->nkids - 1; ++i) p->kids[i] = p->kids[i + 1];
        for (int i = (idx == 0 ? 0 : idx - 1); i < p->nkids - 2; ++i) p->sep[i] = p->sep[i + 1];
        --p->nkids;
        count_tree_step();
    }

    void fix_underflow(Node* p) {
        while (p && p->nkids == 1) {
            count_tree_step();
            Node* gp = p->parent;
            if (!gp) {
                // root with one kid: hoist
                void* kid = p->kids[0];
                if (p->height == 1) {
                    single_ = static_cast<Leaf*>(kid);
                    single_->parent = nullptr;
                    root_ = nullptr;
                } else {
                    root_ = static_cast<Node*>(kid);
                    root_->parent = nullptr;
                }
                delete p;
                return;
            }
            int idx = kid_index(gp, p);
            Node* sib = static_cast<Node*>(gp->kids[idx > 0 ? idx - 1 : idx + 1]);
            bool sib_left = idx > 0;
            if (sib->nkids > 2) {
                // borrow one kid from the sibling; separators rotate through
                // the grandparent so every bound stays an upper bound
                if (sib_left) {
                    void* moved = sib->kids[sib->nkids - 1];
                    T below_moved = sib->sep[sib->nkids - 2];  // < min(moved)
                    T above_moved = gp->sep[idx - 1];          // >= max(moved)
                    --sib->nkids;
                    for (int i = p->nkids; i > 0; --i) p->kids[i] = p->kids[i - 1];
                    for (int i = p->nkids - 1; i >= 1; --i) p->sep[i] = p->sep[i - 1];
                    p->kids[0] = moved;
                    set_parent(moved, p->height - 1, p);
                    p->sep[0] = above_moved;
                    ++p->nkids;
                    gp->sep[idx - 1] = below_moved;
                } else {
                    void* moved = sib->kids[0];
                    T above_moved = sib->sep[0];      // >= max(moved)
                    T below_moved = gp->sep[idx];     // < min(moved), >= max(p)
                    for (int i = 0; i < sib->nkids - 1; ++i) sib->kids[i] = sib->kids[i + 1];
                    for (int i = 0; i < sib->nkids - 2; ++i) sib->sep[i] = sib->sep[i + 1];
                    --sib->nkids;
                    p->kids[p->nkids] = moved;
                    set_parent(moved, p->height - 1, p);
                    p->sep[p->nkids - 1] = below_moved;
                    ++p->nkids;
                    gp->sep[idx] = above_moved;
                }
                return;
            }
            // merge p into sibling (sibling has exactly 2 kids -> 3 after)
            Node* lhs = sib_left ? sib : p;
            Node* rhs = sib_left ? p : sib;
            T midSep = gp->sep[kid_index(gp, lhs)];
            for (int i = 0; i < rhs->nkids; ++i) {
                lhs->kids[lhs->nkids + i] = rhs->kids[i];
                set_parent(rhs->kids[i], lhs->height - 1, lhs);
            }
            lhs->sep[lhs->nkids - 1] = midSep;
            for (int i = 0; i < rhs->nkids - 1; ++i) lhs->sep[lhs->nkids + i] = rhs->sep[i];
            lhs->nkids += rhs->nkids;
            remove_kid(gp, rhs);
            delete rhs;
            p = gp;
        }
        // root may still be over-merged elsewhere; nothing to do
    }

    static void destroy_nodes(Node* n) {
        if (!n) return;
        if (n->height > 1)
            for (int i = 0; i < n->nkids; ++i) destroy_nodes(static_cast<Node*>(n->kids[i]));
        delete n;
    }

    // After split_after both sides of the path were moved into part lists;
    // the emptied internal nodes along the path must be freed.
    void free_path_nodes(Leaf* l) {
        Node* p = l->parent;
        while (p) {
            Node* up = p->parent;
            delete p;
            p = up;
        }
    }

    // parts: (subtree, height) pushed nearest-the-path first; join them into
    // one tree.  nearest_is_right: the first entry is the RIGHTMOST subtree
    // of the result (true for left side of a split).
    LeafTree assemble(std::vector<std::pair<void*, int>>& parts, bool nearest_is_right, Leaf* f,
                      Leaf* l) {
        LeafTree out;
        if (parts.empty()) return out;
        // Heights are non-decreasing in `parts`; fold from the nearest out.
        void* acc = parts[0].first;
        int acch = parts[0].second;
        set_parent(acc, acch, nullptr);
        for (std::size_t i = 1; i < parts.size(); ++i) {
            void* t = parts[i].first;
            int th = parts[i].second;
            set_parent(t, th, nullptr);
            if (nearest_is_right) {
                Leaf* bl = (th == 0) ? static_cast<Leaf*>(t)
                                     : subtree_max(static_cast<Node*>(t));
                auto [r, h] = join_roots(t, th, acc, acch, bl->val);
                acc = r;
                acch = h;
            } else {
                Leaf* bl = (acch == 0) ? static_cast<Leaf*>(acc)
                                       : subtree_max(static_cast<Node*>(acc));
                auto [r, h] = join_roots(acc, acch, t, th, bl->val);
                acc = r;
                acch = h;
            }
        }
        out.adopt(acc, acch, f, l);
        return out;
    }

    // Joins two subtrees (left < right) given the separator value between
    // them; returns (root, height).  May grow height by one.
    static std::pair<void*, int> join_roots(void* a, int ha, void* b, int hb, const T& sep) {
        if (ha == hb) {
            if (ha == 0 || merged_would_overflow(a, b, ha)) {
                Node* r = new Node();
                r->height = ha + 1;
                r->nkids = 2;
                r->kids[0] = a;
                r->kids[1] = b;
                r->sep[0] = sep;
                set_parent(a, ha, r);
                set_parent(b, hb, r);
                return {r, ha + 1};
            }
            // merge two internal roots into one when they fit
            Node* na = static_cast<Node*>(a);
            Node* nb = static_cast<Node*>(b);
            na->sep[na->nkids - 1] = sep;
            for (int i = 0; i < nb->nkids; ++i) {
                na->kids[na->nkids + i] = nb->kids[i];
                set_parent(nb->kids[i], na->height - 1, na);
                if (i < nb->nkids - 1) na->sep[na->nkids + i] = nb->sep[i];
            }
            na->nkids += nb->nkids;
            delete nb;
            return {na, ha};
        }
        if (ha > hb) {
            // descend right spine of a to height hb+1 and hang b there
            Node* n = static_cast<Node*>(a);
            while (n->height > hb + 1) {
                count_tree_step();
                n = static_cast<Node*>(n->kids[n->nkids - 1]);
            }
            n->sep[n->nkids - 1] = sep;
            n->kids[n->nkids] = b;
            set_parent(b, hb, n);
            ++n->nkids;
            return overflow_up(a, ha, n);
        }
        // mirror: hang a on the left spine of b
        Node* n = static_cast<Node*>(b);
        while (n->height > ha + 1) {
            count_tree_step();
            n = static_cast<Node*>(n->kids[0]);
        }
        for (int i = n->nkids; i > 0; --i) n->kids[i] = n->kids[i - 1];
        for (int i = n->nkids - 1; i >= 1; --i) n->sep[i] = n->sep[i - 1];
        n->kids[0] = a;
        set_parent(a, ha, n);
        ++n->nkids;
        n->sep[0] = sep;
        return overflow_up(b, hb, n);
    }

    static bool merged_would_overflow(void* a, void* b, int h) {
        if (h == 0) return true;
        return static_cast<Node*>(a)->nkids + static_cast<Node*>(b)->nkids > 4;
    }

    // Resolves 5-kid overflows from n upward within a detached subtree whose
    // current root is `root`; returns the possibly-new (root, height).
    static std::pair<void*, int> overflow_up(void* root, int rh, Node* n) {
        while (n && n->nkids == 5) {
            count_tree_step();
            Node* right = new Node();
            right->height = n->height;
            right->nkids = 2;
            right->kids[0] = n->kids[3];
            right->kids[1] = n->kids[4];
            right->sep[0] = n->sep[3];
            set_parent(right->kids[0], n->height - 1, right);
            set_parent(right->kids[1], n->height - 1, right);
            n->nkids = 3;
            Node* gp = n->parent;
            if (!gp) {
                Node* r = new Node();
                r->height = n->height + 1;
                r->nkids = 2;
                r->kids[0] = n;
                r->kids[1] = right;
                r->sep[0] = n->sep[2];
                n->parent = r;
                right->parent = r;
                return {r, r->height};
            }
            int idx = kid_index(gp, n);
            for (int i = gp->nkids; i > idx + 1; --i) gp->kids[i] = gp->kids[i - 1];
            for (int i = gp->nkids - 1; i >= idx + 1; --i) gp->sep[i] = gp->sep[i - 1];
            gp->kids[idx + 1] = right;
            right->parent = gp;
            ++gp->nkids;
            gp->sep[idx] = n->sep[2];
            n = gp;
        }
        return {root, rh};
    }

    template <typename Less>
    std::pair<Leaf*, Leaf*> validate_node(Node* n, Less less, Leaf*& gfirst, Leaf*& glast) const {
        HK_ASSERT(n->nkids >= 2 && n->nkids <= 4, "node width");
        Leaf* lo = nullptr;
        Leaf* hi = nullptr;
        for (int i = 0; i < n->nkids; ++i) {
            Leaf *klo, *khi;
            if (n->height == 1) {
                Leaf* l = static_cast<Leaf*>(n->kids[i]);
                HK_ASSERT(l->parent == n, "leaf parent");
                klo = khi = l;
            } else {
                Node* k = static_cast<Node*>(n->kids[i]);
                HK_ASSERT(k->parent == n, "node parent");
                HK_ASSERT(k->height == n->height - 1, "height step");
                auto [a, b] = validate_node(k, less, gfirst, glast);
                klo = a;
                khi = b;
            }
            if (i == 0) lo = klo;
            hi = khi;
            if (i < n->nkids - 1)
                HK_ASSERT(!less(n->sep[i], khi->val), "separator bounds left subtree");
            if (i > 0)
                HK_ASSERT(less(n->sep[i - 1], klo->val), "separator below right subtree");
        }
        if (!gfirst) gfirst = lo;
        glast = hi;
        return {lo, hi};
    }
};

} // namespace hullkit
