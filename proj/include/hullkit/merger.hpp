#pragma once

// Upper-hull merger for two shrinking convex chains.
//
// Maintains UV(A ∪ B), the vertices of the upper hull of the union of two
// point chains that are each in strictly convex position and only ever
// shrink: replace(side, r, L) deletes the hull point r and inserts the chain
// L strictly below the two hull edges that vanish with r.  Amortized cost is
// O(1 + |L| + |L'|) primitive steps, where L' is the set of points that
// surface onto the merged hull, and create costs O(|A| + |B|).
//
// The speed comes from a persistent separation certificate over both hulls:
//   - crossing records mark where the two hull curves exchange dominance
//     (plus wall/gap records at the ends of the x-overlap);
//   - each maximal stretch where one hull runs above the other (a "streak")
//     carries certificates for the locally inner chain: a maximal set of
//     selected inner points whose sight-lines (extensions of their incident
//     edges) hit the outer chain and pin down a covered slab each, splitter
//     structures holding the inner points between neighboring selected ones
//     with suspended searches for uncovered points, and boundary tests at
//     the streak ends;
//   - chord shortcuts compress outer-chain stretches that carry no sight-line
//     hits, so scans between certificate anchors touch O(1) edges;
//   - bridges (mixed edges of the merged hull) are kept per crossing record,
//     and a point's life only moves forward: inside → selected → hidden under
//     a bridge → on the merged hull → deleted.  A potential of 8/3/2/1 per
//     state funds all certificate repair work triggered by deletions.
//
// Exactness: all geometry is exact rational; any exact tie that the
// general-position precondition excludes raises DegenerateInput.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "geometry.hpp"
#include "instrument.hpp"
#include "split_array.hpp"
#include "splitter.hpp"

namespace hullkit {

enum class Side : unsigned char { A = 0, B = 1 };

inline Side other_side(Side s) { return s == Side::A ? Side::B : Side::A; }
inline int side_ix(Side s) { return s == Side::A ? 0 : 1; }
inline const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

template <typename Ref = std::monostate>
class Merger {
  public:
    struct PointRec;
    struct ScNode;
    struct RayIRec;
    struct ShortcutRec;
    struct EqRec;
    struct SplitterWrap;

    using Locator = PointRec*;

    // Life states only ever advance.
    enum class Life : unsigned char { Inside = 0, Hidden = 1, OnHull = 2, Dead = 3 };

    struct PointRec {
        PointR2 pt;
        Ref base{};
        Side side = Side::A;
        Life life = Life::Inside;
        bool selected = false;
        std::uint32_t touched = 0;  // stamp of the op that last promoted it
        PointRec *prev = nullptr, *next = nullptr;    // own-hull chain
        PointRec *mprev = nullptr, *mnext = nullptr;  // merged-hull chain (OnHull only)
        ScNode* node = nullptr;  // chain node while uncovered by shortcuts
        RayIRec *rayL = nullptr, *rayR = nullptr;
        SplitterWrap *wrapL = nullptr, *wrapR = nullptr;  // selected: adjacent streak splitters
        EqRec *brFromHere = nullptr, *brToHere = nullptr;  // bridge leaving / arriving
        std::vector<ScNode*> seg_cuts;  // chord ends on segment (this, next); <= 3
        std::vector<EqRec*> seg_eqs;    // crossings on segment (this, next); <= 2
    };

    // One vertex of a shortcut-hull chain: an uncovered input point, or a
    // chord end sitting mid-segment.  Positions are cached exactly; a chord
    // end's position never changes once cut (its segment and line are fixed).
    struct ScNode {
        PointRec* input = nullptr;
        ShortcutRec* cut = nullptr;
        bool cut_hi = false;        // right end of its chord
        PointRec* seg = nullptr;    // mid-segment cut: owning segment (seg, seg->next)
        PointR2 pos;
        ShortcutRec* chord = nullptr;  // edge [this, next] is this shortcut's chord
        ScNode *prev = nullptr, *next = nullptr;
        std::vector<RayIRec*> rays;  // sight-line hits on edge [this, next]; <= 4
        bool alive = true;
    };

    // A sight-line hit: where a selected point's edge extension meets the
    // other side's shortcut hull.  Line and hit are frozen copies; they stay
    // authoritative for splitter colorings until re-established.  A clipped
    // hit sits on the vertical through the far stretch boundary instead of on
    // the chain: the line cleared every edge up to there, so the covered slab
    // simply ends at the boundary.
    struct RayIRec {
        PointRec* owner = nullptr;
        bool facing_right = false;
        LineR2 ln{};
        bool vertical = false;  // extreme points sight straight up
        ScNode* anchor = nullptr;
        PointR2 hit;
        bool clipped = false;
        bool alive = true;
    };

    struct ShortcutRec {
        Side side = Side::A;
        PointRec *d1 = nullptr, *d2 = nullptr;  // defining input points (may outlive them)
        ScNode *lo = nullptr, *hi = nullptr;    // chord end nodes
        bool alive = true;
    };

    // A dominance-change record.  Crossing: the two hull curves properly
    // cross (carried by one segment of each side).  WallOver/WallUnder: at an
    // end of the x-overlap the entering chain's extreme point sits above /
    // below the other curve.  Gap: the two x-ranges are disjoint and a single
    // bridge joins the facing ends.
    struct EqRec {
        enum class Kind : unsigned char { Crossing, WallOver, WallUnder, Gap };
        Kind kind = Kind::Crossing;
        bool alive = true;
        PointRec *segA = nullptr, *segB = nullptr;  // Crossing carriers
        PointRec* wall_top = nullptr;               // Wall*: entering chain's extreme
        PointRec* oseg = nullptr;                   // Wall*: other chain's segment there
        PointRec *gapL = nullptr, *gapR = nullptr;  // Gap: facing extremes
        PointR2 pos;  // frozen location (carriers never move while it lives)
        bool wall_is_A = false;
        bool left_end = false;              // sits at the left end of the overlap
        int top_left = -1, top_right = -1;  // -1 single hull, else side_ix of the upper side
        PointRec *brL = nullptr, *brR = nullptr;  // bridge endpoints
        bool bridge_missing = false;
        SplitterWrap *swL = nullptr, *swR = nullptr;
    };

    struct PtXLess {
        bool operator()(const PointRec* a, const PointRec* b) const { return a->pt.x < b->pt.x; }
    };
    struct NodeXLess {
        bool operator()(const ScNode* a, const ScNode* b) const { return a->pos.x < b->pos.x; }
    };

    // Frozen coloring anchor: a sight-line hit plus its line, kept in the
    // splitter wrapper so suspended searches stay answerable even while the
    // defining hit is temporarily torn down.
    struct ColorAnchor {
        PointR2 hit;
        LineR2 ln{};
        bool vertical = false;
    };

    // One streak splitter: the inner points strictly between two certificate
    // ends (neither boundary selected points nor equality records are
    // elements; an under-wall's extreme point is).
    struct SplitterWrap {
        Splitter<PointRec*, PtXLess> m;
        Side inner = Side::A;
        PointRec* selL = nullptr;
        EqRec* eqL = nullptr;
        PointRec* selR = nullptr;
        EqRec* eqR = nullptr;
        std::optional<ColorAnchor> ancL, ancR;
        std::size_t pending_mid = 0;  // joined middle block, carried in the potential
        bool alive = true;
    };

    struct OpStats {
        std::uint64_t steps = 0;   // primitive steps charged to the op
        std::int64_t dphi = 0;     // potential change (after - before)
        std::size_t work = 0;      // 1 + |L| + |L'| (or |A| + |B| for create)
    };

    // ------------------------------------------------------------------
    // Public interface

    Merger(std::vector<std::pair<PointR2, Ref>> a, std::vector<std::pair<PointR2, Ref>> b) {
        std::uint64_t steps0 = g_steps.total();
        std::size_t n = a.size() + b.size();
        build_side(Side::A, std::move(a));
        build_side(Side::B, std::move(b));
        check_joint_position();
        std::vector<EqRec*> evs = discover_records();
        init_merged(evs);
        build_streaks(evs);
        last_ = OpStats{g_steps.total() - steps0, phi_, n};
    }

    Merger(const Merger&) = delete;
    Merger& operator=(const Merger&) = delete;

    // Merged-hull locators captured at construction, left to right.
    const std::vector<Locator>& created() const { return create_hull_; }

    // Deletes r (which must be on the merged hull) and grafts the chain L
    // into its place on r's own hull; returns the locators that newly
    // surfaced onto the merged hull, left to right.
    std::vector<Locator> replace(Side s, Locator r, std::vector<std::pair<PointR2, Ref>> L);

    // Current merged hull, left to right (linear walk; diagnostics/tests).
    std::vector<Locator> hull() const {
        std::vector<Locator> out;
        for (PointRec* p = mhead_; p; p = p->mnext) out.push_back(p);
        return out;
    }

    static const PointR2& point(Locator l) { return l->pt; }
    static Side side_of(Locator l) { return l->side; }
    static bool alive(Locator l) { return l->life != Life::Dead; }
    static bool on_hull(Locator l) { return l->life == Life::OnHull; }
    static Ref& ref(Locator l) { return l->base; }
    static Locator merged_prev(Locator l) { return l->mprev; }
    static Locator merged_next(Locator l) { return l->mnext; }
    static Locator side_prev(Locator l) { return l->prev; }
    static Locator side_next(Locator l) { return l->next; }

    std::size_t live_size(Side s) const {
        std::size_t n = 0;
        for (PointRec* p = head_[side_ix(s)]; p; p = p->next) ++n;
        return n;
    }

    std::int64_t potential() const { return phi_; }
    const OpStats& last_op() const { return last_; }

    // Walks the whole structure and reports every broken certificate
    // property as one line; empty means the certificate is complete.
    std::vector<std::string> validate_certificate() const;

  private:
    // ------------------------------------------------------------------
    // Storage.  Arenas only grow; dead records keep their memory so every
    // handle in the structure stays dereferenceable (validators check alive
    // flags instead).
    std::deque<PointRec> pts_;
    std::deque<ScNode> nodes_;
    std::deque<RayIRec> rays_;
    std::deque<EqRec> eqrs_;
    std::deque<ShortcutRec> shortcuts_;
    std::deque<SplitterWrap> wraps_;

    PointRec* head_[2] = {nullptr, nullptr};
    PointRec* tail_[2] = {nullptr, nullptr};
    ScNode* chead_[2] = {nullptr, nullptr};
    PointRec* mhead_ = nullptr;
    EqRec* endL_ = nullptr;  // record at the left end of the overlap (or the gap)
    EqRec* endR_ = nullptr;
    std::vector<EqRec*> fresh_eqs_;  // records born this operation, bridges pending
    std::vector<Locator> create_hull_;
    std::int64_t phi_ = 0;
    std::uint32_t stamp_ = 0;
    OpStats last_{};

    // ------------------------------------------------------------------
    // Potential ledger

    static int life_phi(Life l, bool selected) {
        switch (l) {
            case Life::Inside: return selected ? 3 : 8;
            case Life::Hidden: return 2;
            case Life::OnHull: return 1;
            case Life::Dead: return 0;
        }
        return 0;
    }

    void set_life(PointRec* p, Life nl) {
        if (p->life == nl) return;
        HK_ASSERT(int(nl) > int(p->life), "life cycle ran backwards");
        HK_ASSERT(nl != Life::Dead || p->life == Life::OnHull,
                  "only merged-hull points get deleted");
        phi_ -= life_phi(p->life, p->selected);
        p->life = nl;
        p->selected = false;
        phi_ += life_phi(nl, false);
        count_record_op();
    }

    void set_selected(PointRec* p) {
        HK_ASSERT(p->life == Life::Inside && !p->selected, "selected a non-inside point");
        p->selected = true;
        phi_ += life_phi(Life::Inside, true) - life_phi(Life::Inside, false);
        count_record_op();
    }

    // ------------------------------------------------------------------
    // Elementary geometry over records

    static LineR2 seg_line(const PointRec* a) {
        HK_ASSERT(a && a->next, "segment line of a chain end");
        return line_through(a->pt, a->next->pt);
    }

    static LineR2 edge_line(const ScNode* z) {
        HK_ASSERT(z && z->next, "edge line at the chain end");
        return line_through(z->pos, z->next->pos);
    }

    static bool edge_real(const ScNode* z) {
        return z->input && z->next && z->next->input && z->input->next == z->next->input &&
               !z->chord;
    }

    static int strict_side(const LineR2& ln, const PointR2& p, const char* who) {
        int s = side_of_line(ln, p);
        if (s == 0) throw DegenerateInput(std::string(who) + ": exact incidence");
        return s;
    }

    static Orientation strict_orient(const PointR2& a, const PointR2& b, const PointR2& c,
                                     const char* who) {
        Orientation o = orientation(a, b, c);
        if (o == Orientation::Collinear)
            throw DegenerateInput(std::string(who) + ": collinear triple");
        return o;
    }

    // Sight line of p facing into a site: right-facing uses the left
    // neighbor's edge extended rightward, and extreme points sight straight
    // up (vertical flag).
    struct SightLine {
        LineR2 ln{};
        bool vertical = false;
    };

    static SightLine sight_line(const PointRec* p, bool facing_right) {
        const PointRec* nb = facing_right ? p->prev : p->next;
        if (!nb) return SightLine{{}, true};
        return SightLine{line_through(nb->pt, p->pt), false};
    }

    // ------------------------------------------------------------------
    // Allocation and registration.  Handles into the arenas are permanent;
    // killing a record flips its alive flag and detaches it.

    PointRec* new_point(const PointR2& p, Ref base, Side s) {
        pts_.push_back(PointRec{});
        PointRec* q = &pts_.back();
        q->pt = p;
        q->base = std::move(base);
        q->side = s;
        phi_ += life_phi(Life::Inside, false);
        count_record_op();
        return q;
    }

    ScNode* new_input_node(PointRec* p) {
        nodes_.push_back(ScNode{});
        ScNode* z = &nodes_.back();
        z->input = p;
        z->pos = p->pt;
        p->node = z;
        count_record_op();
        return z;
    }

    ScNode* new_cut_node(ShortcutRec* sc, bool hi, PointRec* seg, PointR2 pos) {
        nodes_.push_back(ScNode{});
        ScNode* z = &nodes_.back();
        z->cut = sc;
        z->cut_hi = hi;
        z->seg = seg;
        z->pos = std::move(pos);
        auto& cs = seg->seg_cuts;
        auto it = cs.begin();
        while (it != cs.end() && (*it)->pos.x < z->pos.x) ++it;
        cs.insert(it, z);
        HK_ASSERT(cs.size() <= 3, "more than three chord ends on one segment");
        count_record_op();
        return z;
    }

    static void link_nodes(ScNode* a, ScNode* b) {
        if (a) a->next = b;
        if (b) b->prev = a;
        count_record_op();
    }

    static void link_pts(PointRec* a, PointRec* b) {
        if (a) a->next = b;
        if (b) b->prev = a;
        count_record_op();
    }

    static void link_merged(PointRec* a, PointRec* b) {
        if (a) a->mnext = b;
        if (b) b->mprev = a;
        count_record_op();
    }

    RayIRec* new_ray(PointRec* owner, bool facing_right, const SightLine& sl, ScNode* anchor,
                     PointR2 hit, bool clipped) {
        rays_.push_back(RayIRec{});
        RayIRec* ri = &rays_.back();
        ri->owner = owner;
        ri->facing_right = facing_right;
        ri->ln = sl.ln;
        ri->vertical = sl.vertical;
        ri->anchor = anchor;
        ri->hit = std::move(hit);
        ri->clipped = clipped;
        anchor->rays.push_back(ri);
        HK_ASSERT(anchor->rays.size() <= 4, "more than four sight-line hits on one edge");
        (facing_right ? owner->rayR : owner->rayL) = ri;
        count_record_op();
        return ri;
    }

    void kill_ray(RayIRec* ri) {
        if (!ri || !ri->alive) return;
        auto& rs = ri->anchor->rays;
        rs.erase(std::remove(rs.begin(), rs.end(), ri), rs.end());
        (ri->facing_right ? ri->owner->rayR : ri->owner->rayL) = nullptr;
        ri->alive = false;
        count_record_op();
    }

    void reg_eq(EqRec* e) {
        auto put = [&](PointRec* seg) {
            auto& es = seg->seg_eqs;
            auto it = es.begin();
            while (it != es.end() && (*it)->pos.x < e->pos.x) ++it;
            es.insert(it, e);
            HK_ASSERT(es.size() <= 2, "more than two crossings on one segment");
        };
        if (e->kind == EqRec::Kind::Crossing) {
            put(e->segA);
            put(e->segB);
        } else if (e->kind != EqRec::Kind::Gap) {
            put(e->oseg);
        }
        count_record_op();
    }

    void kill_eq(EqRec* e) {
        if (!e || !e->alive) return;
        auto drop = [&](PointRec* seg) {
            auto& es = seg->seg_eqs;
            es.erase(std::remove(es.begin(), es.end(), e), es.end());
        };
        if (e->kind == EqRec::Kind::Crossing) {
            drop(e->segA);
            drop(e->segB);
        } else if (e->kind != EqRec::Kind::Gap) {
            drop(e->oseg);
        }
        dissolve_bridge_links(e);
        e->alive = false;
        count_record_op();
    }

    void dissolve_bridge_links(EqRec* e) {
        if (e->brL) {
            e->brL->brFromHere = nullptr;
            e->brL = nullptr;
        }
        if (e->brR) {
            e->brR->brToHere = nullptr;
            e->brR = nullptr;
        }
        count_record_op();
    }

    void set_bridge(EqRec* e, PointRec* l, PointRec* r) {
        HK_ASSERT(!l->brFromHere && !r->brToHere, "bridge endpoint already taken");
        e->brL = l;
        e->brR = r;
        l->brFromHere = e;
        r->brToHere = e;
        e->bridge_missing = false;
        count_record_op();
    }

    void kill_node(ScNode* z) {
        if (!z || !z->alive) return;
        HK_ASSERT(z->rays.empty(), "dropping an edge that still carries sight-line hits");
        if (z->input && z->input->node == z) z->input->node = nullptr;
        if (z->cut) {
            auto& cs = z->seg->seg_cuts;
            cs.erase(std::remove(cs.begin(), cs.end(), z), cs.end());
        }
        z->alive = false;
        count_record_op();
    }

    SplitterWrap* new_wrap(Side inner) {
        wraps_.emplace_back();
        SplitterWrap* w = &wraps_.back();
        w->inner = inner;
        count_record_op();
        return w;
    }

    void sync_pending(SplitterWrap* w) {
        std::size_t np = w->m.pending_middle();
        phi_ += std::int64_t(np) - std::int64_t(w->pending_mid);
        w->pending_mid = np;
    }

    void wrap_reopen(SplitterWrap* w) {
        if (w->m.state() != Splitter<PointRec*, PtXLess>::State::Open) w->m.reopen();
        sync_pending(w);
    }

    // The chain node whose edge [z, z->next] spans x on the given segment.
    static ScNode* node_at(PointRec* seg, const Exact& x) {
        ScNode* best = nullptr;
        if (seg->node && !(x < seg->node->pos.x)) best = seg->node;
        for (ScNode* c : seg->seg_cuts) {
            count_inspection();
            if (!(x < c->pos.x) && (!best || best->pos.x < c->pos.x)) best = c;
        }
        HK_ASSERT(best, "segment has no chain edge at the requested position");
        return best;
    }

    // ------------------------------------------------------------------
    // Construction

    void build_side(Side s, std::vector<std::pair<PointR2, Ref>> in) {
        PointRec* prev = nullptr;
        ScNode* zprev = nullptr;
        for (auto& pr : in) {
            if (prev && !(prev->pt.x < pr.first.x))
                throw ContractViolation("create: chain not strictly x-sorted");
            if (prev && prev->prev) {
                Orientation o = orientation(prev->prev->pt, prev->pt, pr.first);
                if (o == Orientation::Collinear)
                    throw DegenerateInput("create: collinear chain vertices");
                if (o == Orientation::Left)
                    throw ContractViolation("create: chain not strictly convex");
            }
            PointRec* q = new_point(pr.first, std::move(pr.second), s);
            link_pts(prev, q);
            ScNode* z = new_input_node(q);
            link_nodes(zprev, z);
            if (!prev) {
                head_[side_ix(s)] = q;
                chead_[side_ix(s)] = z;
            }
            prev = q;
            zprev = z;
        }
        tail_[side_ix(s)] = prev;
    }

    void check_joint_position() const {
        PointRec* a = head_[0];
        PointRec* b = head_[1];
        while (a && b) {
            count_predicate();
            if (a->pt.x == b->pt.x)
                throw DegenerateInput("create: equal x across the two chains");
            if (a->pt.x < b->pt.x)
                a = a->next;
            else
                b = b->next;
        }
    }

    EqRec* new_eq(typename EqRec::Kind k) {
        eqrs_.push_back(EqRec{});
        EqRec* e = &eqrs_.back();
        e->kind = k;
        count_record_op();
        return e;
    }

    // y-value of the hull curve along segment (seg, seg->next) at x.
    static Exact seg_y(const PointRec* seg, const Exact& x) { return eval(seg_line(seg), x); }

    EqRec* make_crossing(PointRec* sa, PointRec* sb, int top_left) {
        EqRec* e = new_eq(EqRec::Kind::Crossing);
        e->segA = sa;
        e->segB = sb;
        e->pos = intersect(seg_line(sa), seg_line(sb));
        e->top_left = top_left;
        e->top_right = top_left == 0 ? 1 : 0;
        reg_eq(e);
        return e;
    }

    EqRec* make_wall(PointRec* w, PointRec* oseg, bool left_end) {
        Exact oy = seg_y(oseg, w->pt.x);
        count_predicate();
        if (oy == w->pt.y) throw DegenerateInput("wall: extreme point on the other curve");
        bool over = oy < w->pt.y;
        EqRec* e = new_eq(over ? EqRec::Kind::WallOver : EqRec::Kind::WallUnder);
        e->wall_top = w;
        e->oseg = oseg;
        e->wall_is_A = w->side == Side::A;
        e->left_end = left_end;
        int went = side_ix(w->side);
        int woth = 1 - went;
        if (left_end) {
            e->top_left = -1;
            e->top_right = over ? went : woth;
        } else {
            e->top_left = over ? went : woth;
            e->top_right = -1;
        }
        e->pos = PointR2{w->pt.x, oy};
        reg_eq(e);
        return e;
    }

    EqRec* make_gap(PointRec* lt, PointRec* rh) {
        EqRec* e = new_eq(EqRec::Kind::Gap);
        e->gapL = lt;
        e->gapR = rh;
        e->top_left = -1;
        e->top_right = -1;
        e->pos = PointR2{lt->pt.x, lt->pt.y};
        return e;
    }

    static bool eq_flips(const EqRec* e) {
        switch (e->kind) {
            case EqRec::Kind::Crossing: return true;
            case EqRec::Kind::WallOver: return true;
            case EqRec::Kind::WallUnder: return false;
            case EqRec::Kind::Gap: return true;
        }
        return false;
    }

    // Sweeps both chains left to right and installs all dominance records.
    std::vector<EqRec*> discover_records() {
        std::vector<EqRec*> evs;
        if (!head_[0] || !head_[1]) return evs;
        if (tail_[0]->pt.x < head_[1]->pt.x) {
            evs.push_back(make_gap(tail_[0], head_[1]));
            endL_ = endR_ = evs.back();
            return evs;
        }
        if (tail_[1]->pt.x < head_[0]->pt.x) {
            evs.push_back(make_gap(tail_[1], head_[0]));
            endL_ = endR_ = evs.back();
            return evs;
        }
        // Left wall: the chain entering later sits above or below the other.
        count_predicate();
        Side ent = head_[0]->pt.x < head_[1]->pt.x ? Side::B : Side::A;
        PointRec* w = head_[side_ix(ent)];
        PointRec* o = head_[side_ix(other_side(ent))];
        while (o->next && o->next->pt.x < w->pt.x) {
            count_inspection();
            o = o->next;
        }
        HK_ASSERT(o->next, "overlap without a spanning segment");
        evs.push_back(make_wall(w, o, true));
        endL_ = evs.back();
        // Crossing sweep between the walls.
        PointRec* sa = ent == Side::A ? w : o;
        PointRec* sb = ent == Side::A ? o : w;
        int top = evs.back()->top_right;
        Exact xr = tail_[0]->pt.x < tail_[1]->pt.x ? tail_[0]->pt.x : tail_[1]->pt.x;
        count_predicate();
        for (;;) {
            // next breakpoint: the earlier right end of the two current segments
            bool a_ends_first;
            if (!sa->next)
                a_ends_first = false;
            else if (!sb->next)
                a_ends_first = true;
            else {
                count_predicate();
                a_ends_first = sa->next->pt.x < sb->next->pt.x;
            }
            PointRec* v = a_ends_first ? sa->next : sb->next;
            HK_ASSERT(v, "crossing sweep ran off both chains");
            count_predicate();
            if (!(v->pt.x < xr)) break;
            PointRec* oseg = a_ends_first ? sb : sa;
            Exact oy = seg_y(oseg, v->pt.x);
            count_predicate();
            if (oy == v->pt.y) throw DegenerateInput("create: vertex on the other curve");
            int ntop = a_ends_first ? (v->pt.y > oy ? 0 : 1) : (v->pt.y > oy ? 1 : 0);
            if (ntop != top) {
                evs.push_back(make_crossing(sa, sb, top));
                top = ntop;
            }
            if (a_ends_first)
                sa = sa->next;
            else
                sb = sb->next;
        }
        // Right wall.
        count_predicate();
        Side lv = tail_[0]->pt.x < tail_[1]->pt.x ? Side::A : Side::B;
        PointRec* wt = tail_[side_ix(lv)];
        PointRec* os = lv == Side::A ? sb : sa;
        // the current other-side segment must span the leaving tail
        HK_ASSERT(os->next && os->pt.x < wt->pt.x && wt->pt.x < os->next->pt.x,
                  "right wall segment lost by the sweep");
        EqRec* rw = make_wall(wt, os, false);
        HK_ASSERT(rw->top_left == top, "wall polarity disagrees with the sweep");
        evs.push_back(rw);
        endR_ = rw;
        return evs;
    }

    // Brute upper hull of both chains: initial life states, merged links,
    // and one bridge per dominance flip.
    void init_merged(const std::vector<EqRec*>& evs) {
        std::vector<PointRec*> all;
        for (PointRec *a = head_[0], *b = head_[1]; a || b;) {
            if (!b || (a && a->pt.x < b->pt.x)) {
                all.push_back(a);
                a = a->next;
            } else {
                all.push_back(b);
                b = b->next;
            }
            count_inspection();
        }
        std::vector<PointRec*> st;
        for (PointRec* p : all) {
            while (st.size() >= 2) {
                Orientation o =
                    strict_orient(st[st.size() - 2]->pt, st.back()->pt, p->pt, "create hull scan");
                if (o == Orientation::Right) break;
                st.pop_back();
                count_record_op();
            }
            st.push_back(p);
        }
        PointRec* prev = nullptr;
        for (PointRec* p : st) {
            set_life(p, Life::OnHull);
            link_merged(prev, p);
            prev = p;
        }
        mhead_ = st.empty() ? nullptr : st.front();
        create_hull_ = st;
        // Everyone else: hidden when at/above the other curve (under a bridge
        // or past its end), inside when strictly below it.
        for (int sx = 0; sx < 2; ++sx) {
            PointRec* os = head_[1 - sx];
            for (PointRec* p = head_[sx]; p; p = p->next) {
                while (os && os->next && os->next->pt.x < p->pt.x) {
                    count_predicate();
                    os = os->next;
                }
                if (p->life == Life::OnHull) continue;
                bool below;
                if (!os || p->pt.x < os->pt.x || (os->next && !(p->pt.x < os->next->pt.x)) ||
                    (!os->next && os->pt.x < p->pt.x)) {
                    below = false;  // beyond the other chain's x-range
                } else if (!os->next) {
                    below = false;
                } else {
                    int sg = strict_side(seg_line(os), p->pt, "create: point on the other curve");
                    below = sg < 0;
                }
                set_life(p, below ? Life::Inside : Life::Hidden);
            }
        }
        // Bridges: merged edges that change side, one per flipping record.
        std::size_t ri = 0;
        for (PointRec* p = mhead_; p && p->mnext; p = p->mnext) {
            if (p->side == p->mnext->side) continue;
            while (ri < evs.size() && !eq_flips(evs[ri])) ++ri;
            HK_ASSERT(ri < evs.size(), "mixed hull edge without a dominance flip");
            EqRec* e = evs[ri++];
            HK_ASSERT(!(e->pos.x < p->pt.x) && !(p->mnext->pt.x < e->pos.x),
                      "bridge does not span its record");
            set_bridge(e, p, p->mnext);
        }
        while (ri < evs.size() && !eq_flips(evs[ri])) ++ri;
        HK_ASSERT(ri == evs.size(), "dominance flip without a mixed hull edge");
    }

    // ------------------------------------------------------------------
    // Certificate refinement.  A site is the working state for one stretch
    // between two boundaries (selected points or dominance records): T holds
    // the outer-chain nodes strictly inside the alignments, w the splitter of
    // inner points.  Sites live only within one operation.

    struct Boundary {
        PointRec* sel = nullptr;
        EqRec* eq = nullptr;
        ScNode* align = nullptr;  // outer-chain node whose edge carries the alignment
    };

    struct Site {
        Side inner = Side::A;
        Boundary lb, rb;
        SplitArray<ScNode*, NodeXLess> T;
        SplitterWrap* w = nullptr;
        bool flips = false;  // outer side just dropped: polarity may invert locally
    };

    // Inner carrying segment of a record as seen from side d (null for
    // WallUnder, whose boundary test goes through the wall point instead).
    static PointRec* inner_seg(const EqRec* e, Side d) {
        switch (e->kind) {
            case EqRec::Kind::Crossing: return d == Side::A ? e->segA : e->segB;
            case EqRec::Kind::WallOver:
                HK_ASSERT(e->oseg->side == d, "wall record: inner side mismatch");
                return e->oseg;
            case EqRec::Kind::WallUnder: return nullptr;
            case EqRec::Kind::Gap: break;
        }
        HK_ASSERT(false, "gap record used as a streak boundary");
        return nullptr;
    }

    // Outer-chain node whose edge carries the record.
    static ScNode* outer_node(const EqRec* e, Side t) {
        switch (e->kind) {
            case EqRec::Kind::Crossing: return node_at(t == Side::A ? e->segA : e->segB, e->pos.x);
            case EqRec::Kind::WallOver:
                if (side_ix(t) == (e->wall_is_A ? 0 : 1)) return e->wall_top->node;
                return node_at(e->oseg, e->pos.x);
            case EqRec::Kind::WallUnder:
                HK_ASSERT(e->oseg->side == t, "wall record: outer side mismatch");
                return node_at(e->oseg, e->pos.x);
            case EqRec::Kind::Gap: break;
        }
        HK_ASSERT(false, "gap record has no outer chain");
        return nullptr;
    }

    // Covered test against a frozen anchor: the sight line seals the slab
    // between its owner and the hit, so u is covered iff it sits strictly
    // inside that slab in x and strictly below the line.  Slab edges are
    // exclusive (an x tie means u is the far boundary itself); vertical sight
    // lines seal nothing.
    struct WrapColoring {
        const SplitterWrap* w;

        static bool shadowed(const ColorAnchor& a, const PointRec* u, bool red_side) {
            if (a.vertical) return false;
            count_predicate();
            if (red_side ? !(u->pt.x < a.hit.x) : !(a.hit.x < u->pt.x)) return false;
            int s = side_of_line(a.ln, u->pt);
            if (s == 0) throw DegenerateInput("coloring: point on a sight line");
            return s < 0;
        }

        bool red(PointRec* const& u) const { return w->ancL && shadowed(*w->ancL, u, true); }
        bool blue(PointRec* const& u) const { return w->ancR && shadowed(*w->ancR, u, false); }
    };

    bool ray_ok(const PointRec* p, bool facing_right) const {
        const RayIRec* ri = facing_right ? p->rayR : p->rayL;
        return ri && ri->alive;
    }

    // Boundary certificate between selected p and record e (p_on_left: p is
    // the left end, e the right).  Only a clipped sight line covers the whole
    // stretch: it cleared every outer edge up to the record, so everything
    // under it stays sealed.  An under-wall's own point sits exactly at the
    // far x -- outside any slab -- and must be pinned under the line itself,
    // unless p is that point, in which case there is nothing left to seal.
    bool boundary_ok(const PointRec* p, const EqRec* e, bool p_on_left) const {
        if (e->kind == EqRec::Kind::WallUnder && p == e->wall_top) return true;
        const RayIRec* ri = p_on_left ? p->rayR : p->rayL;
        HK_ASSERT(ri && ri->alive, "boundary test without an established sight line");
        if (!ri->clipped) return false;
        if (e->kind == EqRec::Kind::WallUnder) {
            int s = side_of_line(ri->ln, e->wall_top->pt);
            if (s == 0) throw DegenerateInput("wall boundary: wall point on a sight line");
            return s < 0;
        }
        return true;
    }

    // Establishes p's facing sight-line hit by scanning the outer chain from
    // the boundary alignment.  The walk never leaves the site: reaching the
    // far boundary first clips the hit onto the vertical through it (the line
    // cleared every edge it could cover, so the certificate is terminal).
    // Consumes passed nodes from T; a changed anchor restarts the wrapper's
    // suspended search (colorings must never regain).
    void establish_ray(Site& s, bool left_end) {
        PointRec* p = left_end ? s.lb.sel : s.rb.sel;
        Boundary& b = left_end ? s.lb : s.rb;
        const Boundary& fb = left_end ? s.rb : s.lb;
        Exact cx = fb.sel ? fb.sel->pt.x : fb.eq->pos.x;
        SightLine sl = sight_line(p, left_end);
        HK_ASSERT(b.align, "site boundary without an alignment edge");
        // align spans the boundary x; walking left the first candidate edge is
        // [align, align->next], so start the cursor one past it.
        ScNode* cur = left_end ? b.align : b.align->next;
        auto consume = [&](ScNode* z) {
            if (!s.T.empty() && s.T.min() == z) s.T.delete_min();
            if (!s.T.empty() && s.T.max() == z) s.T.delete_max();
        };
        for (;;) {
            ScNode* fr = left_end ? cur->next : cur->prev;
            ScNode* edge_l = left_end ? cur : cur->prev;
            HK_ASSERT(fr && edge_l, "sight line escaped the outer chain");
            bool crossed;
            if (sl.vertical) {
                count_predicate();
                if (edge_l->pos.x == p->pt.x || edge_l->next->pos.x == p->pt.x)
                    throw DegenerateInput("sight line: node on the vertical");
                crossed = left_end ? p->pt.x < fr->pos.x : fr->pos.x < p->pt.x;
            } else {
                int sg = side_of_line(sl.ln, fr->pos);
                if (sg == 0) throw DegenerateInput("sight line through a chain node");
                crossed = sg < 0;
            }
            count_predicate();
            bool at_far = left_end ? !(fr->pos.x < cx) : !(cx < fr->pos.x);
            if (crossed || at_far) {
                ScNode* anch = edge_l;
                PointR2 hit;
                if (crossed) {
                    hit = sl.vertical ? PointR2{p->pt.x, eval(edge_line(anch), p->pt.x)}
                                      : intersect(sl.ln, edge_line(anch));
                } else {
                    HK_ASSERT(!sl.vertical, "vertical sight line left its own edge");
                    HK_ASSERT(!fb.eq || fb.eq->kind != EqRec::Kind::Crossing,
                              "sight line cleared a crossing record");
                    HK_ASSERT(left_end ? p->pt.x < cx : cx < p->pt.x,
                              "sight line clipped at its own origin");
                    hit = PointR2{cx, eval(sl.ln, cx)};
                }
                RayIRec* ri = new_ray(p, left_end, sl, anch, std::move(hit), !crossed);
                b.align = anch;
                SplitterWrap* w = s.w;
                HK_ASSERT(w == (left_end ? p->wrapR : p->wrapL), "site wrapper mismatch");
                wrap_reopen(w);
                (left_end ? w->ancL : w->ancR) =
                    ColorAnchor{ri->hit, ri->ln, ri->vertical};
                return;
            }
            consume(fr);
            cur = fr;
        }
    }

    void finish_trivial(Site& s) {
        HK_ASSERT(!s.lb.sel && !s.rb.sel, "selected boundary beside an empty splitter");
        PointRec* l = inner_seg(s.lb.eq, s.inner);
        PointRec* r = inner_seg(s.rb.eq, s.inner);
        HK_ASSERT(l && r && l == r, "empty stretch spans more than one inner segment");
    }

    // Splits the node window at x (exclusive left).
    static std::pair<SplitArray<ScNode*, NodeXLess>, SplitArray<ScNode*, NodeXLess>> split_T(
        SplitArray<ScNode*, NodeXLess>& t, const Exact& x) {
        ScNode key;
        key.pos = PointR2{x, Exact(0)};
        return t.split(&key);
    }

    void split_wrap(Site& s, PointRec* o,
                    typename Splitter<PointRec*, PtXLess>::Parts&& parts, SplitterWrap*& w1,
                    SplitterWrap*& w2) {
        SplitterWrap* w = s.w;
        w1 = new_wrap(s.inner);
        w2 = new_wrap(s.inner);
        w1->m = std::move(parts.left);
        w2->m = std::move(parts.right);
        // The boundary element sits in both halves; it just left the stretch
        // interior, and a coloring must never inspect it against its own rays.
        HK_ASSERT(w1->m.delete_max() == o, "left half does not end at the chosen point");
        HK_ASSERT(w2->m.delete_min() == o, "right half does not start at the chosen point");
        w1->selL = s.lb.sel;
        w1->eqL = s.lb.eq;
        w1->selR = o;
        w2->selL = o;
        w2->selR = s.rb.sel;
        w2->eqR = s.rb.eq;
        w1->ancL = w->ancL;
        w2->ancR = w->ancR;
        if (s.lb.sel) s.lb.sel->wrapR = w1;
        if (s.lb.eq) s.lb.eq->swR = w1;
        if (s.rb.sel) s.rb.sel->wrapL = w2;
        if (s.rb.eq) s.rb.eq->swL = w2;
        o->wrapL = w1;
        o->wrapR = w2;
        phi_ -= std::int64_t(w->pending_mid);
        w->pending_mid = 0;
        w->alive = false;
        sync_pending(w1);
        sync_pending(w2);
        count_record_op();
    }

    void refine_worklist(std::vector<Site>& work) {
        while (!work.empty()) {
            Site s = std::move(work.back());
            work.pop_back();
            refine_step(s, work);
        }
    }

    void refine_step(Site& s, std::vector<Site>& work) {
        SplitterWrap* w = s.w;
        HK_ASSERT(w && w->alive, "site over a dead splitter");
        // An empty stretch is terminal as it stands: nothing inside it needs
        // sealing, so no sight line is wanted and no certificate is owed.
        if (w->m.empty()) {
            if (!s.lb.sel && !s.rb.sel) finish_trivial(s);
            return;
        }
        if (s.lb.sel && !ray_ok(s.lb.sel, true)) establish_ray(s, true);
        if (s.rb.sel && !ray_ok(s.rb.sel, false)) establish_ray(s, false);
        if (s.lb.sel && s.rb.eq && boundary_ok(s.lb.sel, s.rb.eq, true)) return;
        if (s.rb.sel && s.lb.eq && boundary_ok(s.rb.sel, s.lb.eq, false)) return;
        split_and_select(s, work);
    }

    void split_and_select(Site& s, std::vector<Site>& work) {
        SplitterWrap* w = s.w;
        using Spl = Splitter<PointRec*, PtXLess>;
        if (w->m.state() == Spl::State::Open) w->m.close();
        auto parts = w->m.split(WrapColoring{w});
        sync_pending(w);
        if (!parts) {
            // Suspended search: every element sits sealed under a frozen sight
            // line, and colorings never regain.  A stretch bounded by records
            // on both sides has no anchors at all, so it cannot color out.
            HK_ASSERT(s.lb.sel || s.rb.sel, "record-bounded stretch colored out");
            return;
        }
        PointRec* o = parts->element;
        auto tt = split_T(s.T, o->pt.x);
        ScNode* drop = tt.first.empty() ? s.lb.align : tt.first.max();
        HK_ASSERT(drop && drop->next, "no covering edge above a split point");
        int sg = side_of_line(edge_line(drop), o->pt);
        if (sg == 0) throw DegenerateInput("split point on the outer chain");
        SplitterWrap *w1 = nullptr, *w2 = nullptr;
        split_wrap(s, o, std::move(*parts), w1, w2);
        if (sg > 0) {
            // The chosen point already pokes above the outer chain: the two
            // curves swap roles around it, opening a region of the other
            // orientation.  Resolved in one piece — both crossings at once.
            HK_ASSERT(s.flips, "inner point above the outer chain in a settled stretch");
            handle_inversion(s, o, tt.first, tt.second, w1, w2, drop, work);
            return;
        }
        set_selected(o);
        work.push_back(
            Site{s.inner, s.lb, Boundary{o, nullptr, drop}, std::move(tt.first), w1, s.flips});
        work.push_back(
            Site{s.inner, Boundary{o, nullptr, drop}, s.rb, std::move(tt.second), w2, s.flips});
    }

    // A point leaves the inner region: certificates anchored on it die, its
    // splitter membership is handled by the caller (scans pop it).
    void surface_point(PointRec* p) {
        kill_ray(p->rayL);
        kill_ray(p->rayR);
        p->wrapL = p->wrapR = nullptr;
        if (p->life == Life::Inside) set_life(p, Life::Hidden);
    }

    // Chain nodes strictly after ua up to and including va, as a window.
    SplitArray<ScNode*, NodeXLess> window_between(ScNode* ua, ScNode* va) const {
        std::vector<ScNode*> win;
        if (ua != va)
            for (ScNode* z = ua->next;; z = z->next) {
                HK_ASSERT(z, "window walk ran off the chain");
                count_inspection();
                win.push_back(z);
                if (z == va) break;
            }
        return SplitArray<ScNode*, NodeXLess>::build(std::move(win));
    }

    // ------------------------------------------------------------------
    // Inversion scans.  When a chosen inner point turns out to lie above the
    // outer chain, the curves swap roles around it: walk both chains away
    // from the point, surfacing inner points that poked out and collecting
    // outer vertices that fell under the new top, until the chains cross.
    // Each direction installs one fresh crossing record.

    struct ScanOut {
        EqRec* e = nullptr;             // the crossing installed on this side
        ScNode* align = nullptr;        // outer node whose edge carries it
        std::vector<PointRec*> ceded;   // outer vertices now inside, in walk order
        SplitterWrap* flank = nullptr;  // surviving flank stretch (after cascades)
    };

    ScanOut scan_dir(Site& s, PointRec* o, bool rightward, SplitArray<ScNode*, NodeXLess>& tw,
                     SplitterWrap* w_fl, ScNode* drop) {
        Side d = s.inner;
        Side t = other_side(d);
        ScanOut out;
        PointRec* cur_d = o;
        ScNode* cur_t = drop;  // left node of the current outer edge
        for (;;) {
            count_inspection();
            PointRec* nd = rightward ? cur_d->next : cur_d->prev;
            ScNode* zo = rightward ? cur_t->next : cur_t;
            HK_ASSERT(nd && zo, "inversion scan ran off a chain");
            count_predicate();
            if (nd->pt.x == zo->pos.x)
                throw DegenerateInput("inversion scan: aligned breakpoints");
            bool inner_first = rightward ? nd->pt.x < zo->pos.x : zo->pos.x < nd->pt.x;
            if (inner_first) {
                int sg = side_of_line(edge_line(cur_t), nd->pt);
                if (sg == 0)
                    throw DegenerateInput("inversion scan: vertex on the outer edge");
                if (sg > 0) {
                    // nd pokes out as well: surface it and keep walking
                    if (w_fl->m.empty()) {
                        PointRec* sb = rightward ? w_fl->selR : w_fl->selL;
                        HK_ASSERT(sb && sb == nd, "inversion scan swallowed a record");
                        SplitterWrap* wn = rightward ? nd->wrapR : nd->wrapL;
                        HK_ASSERT(wn && wn->alive, "inversion cascade into a dead stretch");
                        surface_point(nd);
                        phi_ -= std::int64_t(w_fl->pending_mid);
                        w_fl->pending_mid = 0;
                        w_fl->alive = false;
                        w_fl = wn;
                        wrap_reopen(w_fl);
                    } else {
                        wrap_reopen(w_fl);
                        PointRec* got =
                            rightward ? w_fl->m.delete_min() : w_fl->m.delete_max();
                        HK_ASSERT(got == nd, "inversion scan out of step with the stretch");
                        sync_pending(w_fl);
                        surface_point(nd);
                    }
                    cur_d = nd;
                    continue;
                }
            } else {
                PointRec* dl = rightward ? cur_d : nd;
                int sg = side_of_line(line_through(dl->pt, (rightward ? nd : cur_d)->pt),
                                      zo->pos);
                if (sg == 0)
                    throw DegenerateInput("inversion scan: node on the inner line");
                if (sg < 0) {
                    // the outer vertex fell under the new top: it cedes
                    HK_ASSERT(zo->input && !zo->cut, "ceded vertex is not a plain input node");
                    HK_ASSERT(zo->input->life == Life::Inside, "ceded vertex was not fresh");
                    while (!zo->rays.empty()) kill_ray(zo->rays.back());
                    out.ceded.push_back(zo->input);
                    if (!tw.empty() && (rightward ? tw.min() : tw.max()) == zo) {
                        if (rightward)
                            tw.delete_min();
                        else
                            tw.delete_max();
                    }
                    cur_t = rightward ? zo : cur_t->prev;
                    continue;
                }
            }
            // the chains cross on the current outer edge
            PointRec* dl = rightward ? cur_d : nd;
            HK_ASSERT(edge_real(cur_t), "inversion crossing off a plain hull edge");
            PointRec* tl = cur_t->input;
            EqRec* e = make_crossing(d == Side::A ? dl : tl, d == Side::A ? tl : dl,
                                     rightward ? side_ix(d) : side_ix(t));
            e->bridge_missing = true;
            fresh_eqs_.push_back(e);
            wrap_reopen(w_fl);
            if (rightward) {
                w_fl->selL = nullptr;
                w_fl->eqL = e;
                e->swR = w_fl;
                w_fl->ancL.reset();
            } else {
                w_fl->selR = nullptr;
                w_fl->eqR = e;
                e->swL = w_fl;
                w_fl->ancR.reset();
            }
            out.e = e;
            out.align = cur_t;
            out.flank = w_fl;
            return out;
        }
    }

    void handle_inversion(Site& s, PointRec* o, SplitArray<ScNode*, NodeXLess>& t1,
                          SplitArray<ScNode*, NodeXLess>& t2, SplitterWrap* w1,
                          SplitterWrap* w2, ScNode* drop, std::vector<Site>& work) {
        Side d = s.inner;
        Side t = other_side(d);
        surface_point(o);
        ScanOut scl = scan_dir(s, o, false, t1, w1, drop);
        ScanOut scr = scan_dir(s, o, true, t2, w2, drop);
        // the region between the fresh crossings, in swapped orientation
        std::vector<PointRec*> elems(scl.ceded.rbegin(), scl.ceded.rend());
        elems.insert(elems.end(), scr.ceded.begin(), scr.ceded.end());
        SplitterWrap* wr = new_wrap(t);
        wr->m = Splitter<PointRec*, PtXLess>::build(std::move(elems));
        wr->eqL = scl.e;
        wr->eqR = scr.e;
        scl.e->swR = wr;
        scr.e->swL = wr;
        ScNode* ra = node_at(d == Side::A ? scl.e->segA : scl.e->segB, scl.e->pos.x);
        ScNode* rb = node_at(d == Side::A ? scr.e->segA : scr.e->segB, scr.e->pos.x);
        work.push_back(Site{t, Boundary{nullptr, scl.e, ra}, Boundary{nullptr, scr.e, rb},
                            window_between(ra, rb), wr, s.flips});
        // flank stretches continue against the fresh records; their outer
        // alignments sit a bounded walk away (free runs between anchors stay
        // short under the sweep invariant)
        SplitterWrap* wl = scl.flank;
        Exact lx = wl->selL ? wl->selL->pt.x : wl->eqL->pos.x;
        ScNode* la = scl.align;
        while (lx < la->pos.x) {
            la = la->prev;
            HK_ASSERT(la, "flank alignment walk ran off the chain");
            count_inspection();
        }
        work.push_back(Site{d, Boundary{wl->selL, wl->eqL, la},
                            Boundary{nullptr, scl.e, scl.align},
                            window_between(la, scl.align), wl, s.flips});
        SplitterWrap* wq = scr.flank;
        Exact rx = wq->selR ? wq->selR->pt.x : wq->eqR->pos.x;
        ScNode* qa = scr.align;
        while (qa->next && !(rx < qa->next->pos.x)) {
            qa = qa->next;
            count_inspection();
        }
        work.push_back(Site{d, Boundary{nullptr, scr.e, scr.align},
                            Boundary{wq->selR, wq->eqR, qa},
                            window_between(scr.align, qa), wq, s.flips});
    }

    // ------------------------------------------------------------------
    // Chord shortcuts.  Scans and sight-line walks pay per edge, so between
    // any two carrying edges the chain keeps O(1) plain ones: sweeps cover
    // every longer free run with a chord from the run's second node to its
    // right anchor.

    // Does edge [z, z->next] carry a dominance record?
    static bool edge_has_eq(const ScNode* z) {
        if (!z->next || z->chord) return false;
        const PointRec* seg = z->input ? z->input : z->seg;
        for (const EqRec* e : seg->seg_eqs) {
            count_inspection();
            if (!(e->pos.x < z->pos.x) && e->pos.x < z->next->pos.x) return true;
        }
        return false;
    }

    // Covers the free run strictly between ua and vb with one chord from
    // ua->next to vb.  Interior nodes die (chords whose edges get covered
    // die with them); a cut node at either end is re-owned, never duplicated.
    void chordify(Side t, ScNode* ua, ScNode* vb) {
        ScNode* lo = ua->next;
        HK_ASSERT(lo && lo != vb && lo->next != vb, "chord over fewer than two vertices");
        shortcuts_.push_back(ShortcutRec{});
        ShortcutRec* sc = &shortcuts_.back();
        sc->side = t;
        // first / last input vertex the chord covers (none when it only
        // merges collinear cut pieces of a single segment)
        ScNode* c1 = lo->next;
        ScNode* ck = vb->prev;
        PointRec* pa = c1->input ? c1->input : c1->seg->next;
        PointRec* pb = ck->input ? ck->input : ck->seg;
        bool cov = pa->pt.x < vb->pos.x;
        HK_ASSERT(cov == (lo->pos.x < pb->pt.x), "chord coverage ends disagree");
        if (cov) {
            sc->d1 = pa;
            sc->d2 = pb;
        }
        auto retire_edge = [&](ScNode* z) {
            if (z->chord && z->chord->alive) {
                z->chord->alive = false;
                count_record_op();
            }
        };
        retire_edge(lo);
        for (ScNode* z = c1; z != vb;) {
            ScNode* nx = z->next;
            retire_edge(z);
            kill_node(z);
            z = nx;
        }
        link_nodes(lo, vb);
        lo->chord = sc;
        sc->lo = lo;
        sc->hi = vb;
        bool lo_busy = lo->cut && lo->cut->alive && (lo->cut->lo == lo || lo->cut->hi == lo);
        if (!lo->input && !lo_busy) {
            lo->cut = sc;
            lo->cut_hi = false;
        }
        bool hi_busy = vb->cut && vb->cut->alive && (vb->cut->lo == vb || vb->cut->hi == vb);
        if (!vb->input && !hi_busy) {
            vb->cut = sc;
            vb->cut_hi = true;
        }
        count_record_op();
    }

    // Compresses every free run of more than three edges between u0 and v0.
    void aggressive_sweep(Side t, ScNode* u0, ScNode* v0) {
        ScNode* last_anchor = u0;
        int run = 0;
        for (ScNode* z = u0; z != v0;) {
            z = z->next;
            HK_ASSERT(z, "sweep ran off the chain");
            ++run;
            count_inspection();
            if (z == v0 || !z->rays.empty() || edge_has_eq(z)) {
                if (run > 3) chordify(t, last_anchor, z);
                last_anchor = z;
                run = 0;
            }
        }
    }

    // ------------------------------------------------------------------
    // One streak = one maximal span between neighboring records where the
    // same side stays on top.  Builds the splitter of inner points, refines
    // the covering certificate, then compresses the outer chain's free runs.

    void build_streaks(const std::vector<EqRec*>& evs) {
        for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
            EqRec* el = evs[i];
            EqRec* er = evs[i + 1];
            HK_ASSERT(el->top_right == er->top_left && el->top_right != -1,
                      "neighboring records disagree on the upper side");
            Side t = el->top_right == 0 ? Side::A : Side::B;
            Side d = other_side(t);
            std::vector<PointRec*> inner;
            PointRec* p0;
            if (el->kind == EqRec::Kind::WallUnder) {
                HK_ASSERT(el->wall_top->side == d, "under-wall on the upper side");
                p0 = el->wall_top;
            } else {
                p0 = inner_seg(el, d)->next;
            }
            for (PointRec* p = p0; p && p->pt.x < er->pos.x; p = p->next) {
                count_inspection();
                HK_ASSERT(p->life == Life::Inside, "covered stretch point not inside");
                inner.push_back(p);
            }
            if (er->kind == EqRec::Kind::WallUnder) {
                HK_ASSERT(er->wall_top->side == d, "under-wall on the upper side");
                HK_ASSERT(er->wall_top->life == Life::Inside, "wall point not inside");
                inner.push_back(er->wall_top);
            }
            SplitterWrap* w = new_wrap(d);
            w->m = Splitter<PointRec*, PtXLess>::build(std::move(inner));
            w->eqL = el;
            w->eqR = er;
            el->swR = w;
            er->swL = w;
            ScNode* ua = outer_node(el, t);
            ScNode* va = outer_node(er, t);
            std::vector<Site> work;
            work.push_back(Site{d, Boundary{nullptr, el, ua}, Boundary{nullptr, er, va},
                                window_between(ua, va), w, false});
            refine_worklist(work);
            aggressive_sweep(t, ua, va);
        }
    }
};

// ----------------------------------------------------------------------
// Certificate audit.  Re-derives every invariant the amortized analysis
// rests on straight from the raw records, deliberately not calling the
// maintenance code it is meant to check.  Meant for tests and the CLI's
// validation mode; costs up to quadratic time.

template <typename Ref>
std::vector<std::string> Merger<Ref>::validate_certificate() const {
    std::vector<std::string> out;
    auto bad = [&out](std::string s) { out.push_back(std::move(s)); };
    auto at = [](const PointR2& p) {
        return "(" + format_exact(p.x) + "," + format_exact(p.y) + ")";
    };

    // -- own chains: doubly linked, strictly increasing x, strictly convex
    for (int sx = 0; sx < 2; ++sx) {
        const PointRec* last = nullptr;
        for (const PointRec* p = head_[sx]; p; p = p->next) {
            if (p->life == Life::Dead) bad("dead point still chained at " + at(p->pt));
            if (side_ix(p->side) != sx) bad("point chained on the wrong side at " + at(p->pt));
            if (p->prev != last) bad("own chain back link broken at " + at(p->pt));
            if (last && !(last->pt.x < p->pt.x)) bad("own chain x order broken at " + at(p->pt));
            if (last && last->prev &&
                orientation(last->prev->pt, last->pt, p->pt) != Orientation::Right)
                bad("own chain not strictly convex at " + at(last->pt));
            last = p;
        }
        if (tail_[sx] != last) bad("own chain tail pointer stale");
    }

    // -- point flag hygiene
    for (const PointRec& p : pts_) {
        if (p.life == Life::Dead) {
            if (p.selected || p.rayL || p.rayR || p.wrapL || p.wrapR || p.node || p.mprev ||
                p.mnext || p.brFromHere || p.brToHere)
                bad("dead point still referenced at " + at(p.pt));
            continue;
        }
        if (p.selected && p.life != Life::Inside) bad("selected flag outside the inner life");
        if (!p.selected && (p.rayL || p.rayR || p.wrapL || p.wrapR))
            bad("certificate attachments on an unselected point at " + at(p.pt));
        if (p.selected) {
            if (!p.wrapL || !p.wrapL->alive || !p.wrapR || !p.wrapR->alive)
                bad("selected point without two live stretches at " + at(p.pt));
            else if (p.wrapL->selR != &p || p.wrapR->selL != &p)
                bad("selected point stretch back links broken at " + at(p.pt));
        }
        for (const EqRec* e : p.seg_eqs) {
            if (!e->alive) bad("retired record still registered at " + at(p.pt));
            else if (e->segA != &p && e->segB != &p && e->oseg != &p)
                bad("record registered on a foreign segment at " + at(p.pt));
        }
        if (p.seg_eqs.size() > 2) bad("more than two records on one segment at " + at(p.pt));
        if (p.seg_cuts.size() > 3) bad("more than three chord ends on one segment at " + at(p.pt));
        for (const ScNode* z : p.seg_cuts)
            if (!z->alive || z->seg != &p) bad("stale chord end registration at " + at(p.pt));
    }

    // -- shortcut chains: faithful compressions of the own chains
    std::size_t nodes_walked = 0, chords_marked = 0;
    for (int sx = 0; sx < 2; ++sx) {
        const ScNode* z = chead_[sx];
        if (!z) {
            if (head_[sx]) bad("missing shortcut chain");
            continue;
        }
        if (z->input != head_[sx]) bad("shortcut chain does not start at the chain head");
        const ScNode* lastz = nullptr;
        for (; z; z = z->next) {
            ++nodes_walked;
            if (!z->alive) bad("dead node on the shortcut chain at " + at(z->pos));
            if (z->prev != lastz) bad("shortcut chain back link broken at " + at(z->pos));
            if (lastz && !(lastz->pos.x < z->pos.x))
                bad("shortcut chain x order broken at " + at(z->pos));
            if (z->input) {
                if (z->input->node != z) bad("input node back reference broken at " + at(z->pos));
                if (!(z->input->pt.x == z->pos.x && z->input->pt.y == z->pos.y))
                    bad("input node position stale at " + at(z->pos));
                if (side_ix(z->input->side) != sx) bad("node on the wrong chain at " + at(z->pos));
            } else if (!z->seg || !z->seg->next) {
                bad("cut node without a spanning segment at " + at(z->pos));
            } else {
                if (side_ix(z->seg->side) != sx) bad("cut node on the wrong chain at " + at(z->pos));
                if (!(z->seg->pt.x < z->pos.x) || !(z->pos.x < z->seg->next->pt.x))
                    bad("cut node outside its segment at " + at(z->pos));
                else if (!(eval(seg_line(z->seg), z->pos.x) == z->pos.y))
                    bad("cut node off its segment line at " + at(z->pos));
                const auto& cs = z->seg->seg_cuts;
                if (std::find(cs.begin(), cs.end(), z) == cs.end())
                    bad("cut node unregistered on its segment at " + at(z->pos));
                bool end_of_live = (z->chord && z->chord->alive && z->chord->lo == z) ||
                                   (z->prev && z->prev->chord && z->prev->chord->alive &&
                                    z->prev->chord->hi == z);
                if (!end_of_live) bad("cut node serving no live chord at " + at(z->pos));
            }
            for (const RayIRec* ri : z->rays)
                if (!ri->alive || ri->anchor != z)
                    bad("stale sight line on an edge at " + at(z->pos));
            if (z->rays.size() > 4) bad("more than four sight lines on one edge at " + at(z->pos));
            const ScNode* zn = z->next;
            if (!zn) {
                if (z->input != tail_[sx]) bad("shortcut chain does not end at the chain tail");
                if (z->chord) bad("chord marked on the last node");
                break;
            }
            const PointRec* cl = z->input ? z->input : z->seg;
            if (z->chord) {
                ++chords_marked;
                const ShortcutRec* sc = z->chord;
                if (!sc->alive) {
                    bad("retired chord still marking an edge at " + at(z->pos));
                    lastz = z;
                    continue;
                }
                if (sc->lo != z || sc->hi != zn) bad("chord end links broken at " + at(z->pos));
                if (side_ix(sc->side) != sx) bad("chord filed on the wrong side");
                if ((sc->d1 == nullptr) != (sc->d2 == nullptr))
                    bad("chord with half a witness pair at " + at(z->pos));
                const PointRec* pa = z->input ? z->input->next : z->seg->next;
                const PointRec* pb = zn->input ? zn->input->prev : zn->seg;
                bool cov = pa && pa->pt.x < zn->pos.x;
                if (cov != (pb && z->pos.x < pb->pt.x))
                    bad("chord coverage ends disagree at " + at(z->pos));
                else if (!cov) {
                    if (sc->d1) bad("chord witnesses without covered vertices at " + at(z->pos));
                    const PointRec* crr = zn->input ? zn->input : zn->seg;
                    if (cl != crr) bad("empty chord joining different segments at " + at(z->pos));
                } else {
                    if (sc->d1 != pa || sc->d2 != pb)
                        bad("chord witnesses are not the covered extremes at " + at(z->pos));
                    LineR2 ch = line_through(z->pos, zn->pos);
                    if (side_of_line(ch, pa->pt) <= 0 || side_of_line(ch, pb->pt) <= 0)
                        bad("chord not strictly below the curve at " + at(z->pos));
                }
            } else {
                bool cont = (zn->input && cl->next == zn->input) || (!zn->input && zn->seg == cl);
                if (!cont) bad("shortcut edge skips vertices without a chord at " + at(z->pos));
            }
            lastz = z;
        }
    }
    {
        std::size_t alive_nodes = 0, alive_chords = 0;
        for (const ScNode& z : nodes_)
            if (z.alive) ++alive_nodes;
        for (const ShortcutRec& sc : shortcuts_)
            if (sc.alive) ++alive_chords;
        if (alive_nodes != nodes_walked) bad("shortcut nodes detached from their chains");
        if (alive_chords != chords_marked) bad("live chord not marking any edge");
    }
    for (int sx = 0; sx < 2; ++sx) {
        const ScNode* z = chead_[sx];
        for (const PointRec* p = head_[sx]; p; p = p->next) {
            if (p->node) continue;
            while (z && z->next && !(p->pt.x < z->next->pos.x)) z = z->next;
            if (!z || !z->chord || !z->next || !(z->pos.x < p->pt.x) ||
                !(p->pt.x < z->next->pos.x))
                bad("covered point without a covering chord at " + at(p->pt));
        }
    }

    // -- merged chain: the upper hull, with every other live point strictly
    // below it
    std::vector<const PointRec*> mh;
    {
        const PointRec* last = nullptr;
        for (const PointRec* p = mhead_; p; p = p->mnext) {
            if (p->life != Life::OnHull) bad("merged chain member not on-hull at " + at(p->pt));
            if (p->mprev != last) bad("merged chain back link broken at " + at(p->pt));
            if (last && !(last->pt.x < p->pt.x)) bad("merged chain x order broken at " + at(p->pt));
            if (last && last->mprev &&
                orientation(last->mprev->pt, last->pt, p->pt) != Orientation::Right)
                bad("merged chain not strictly convex at " + at(last->pt));
            mh.push_back(p);
            last = p;
        }
        std::size_t on_hull = 0;
        for (const PointRec& p : pts_)
            if (p.life == Life::OnHull) ++on_hull;
        if (on_hull != mh.size()) bad("on-hull points missing from the merged chain");
    }
    if (!mh.empty()) {
        for (const PointRec& p : pts_) {
            if (p.life != Life::Inside && p.life != Life::Hidden) continue;
            auto it = std::partition_point(mh.begin(), mh.end(), [&](const PointRec* v) {
                return v->pt.x < p.pt.x;
            });
            bool below;
            if (it != mh.end() && (*it)->pt.x == p.pt.x)
                below = p.pt.y < (*it)->pt.y;
            else if (it == mh.begin() || it == mh.end())
                below = false;  // outside the hull's x-range: cannot happen for live points
            else
                below = side_of_line(line_through((*(it - 1))->pt, (*it)->pt), p.pt) < 0;
            if (!below) bad("live point not strictly below the merged hull at " + at(p.pt));
        }
    }

    // -- dominance records: sorted, paired, each one re-derivable from its
    // carriers
    std::vector<const EqRec*> evs;
    for (const EqRec& e : eqrs_)
        if (e.alive) evs.push_back(&e);
    std::sort(evs.begin(), evs.end(), [](const EqRec* a, const EqRec* b) {
        if (!(a->pos.x == b->pos.x)) return a->pos.x < b->pos.x;
        return a->left_end && !b->left_end;
    });
    for (const EqRec* e : evs) {
        switch (e->kind) {
            case EqRec::Kind::Crossing: {
                if (!e->segA || !e->segA->next || e->segA->side != Side::A || !e->segB ||
                    !e->segB->next || e->segB->side != Side::B) {
                    bad("crossing with broken carriers at " + at(e->pos));
                    break;
                }
                PointR2 x = intersect(seg_line(e->segA), seg_line(e->segB));
                if (!(x.x == e->pos.x && x.y == e->pos.y))
                    bad("crossing drifted off its carriers at " + at(e->pos));
                if (!(e->segA->pt.x < e->pos.x && e->pos.x < e->segA->next->pt.x &&
                      e->segB->pt.x < e->pos.x && e->pos.x < e->segB->next->pt.x))
                    bad("crossing outside its carrier segments at " + at(e->pos));
                if (e->top_left == -1 || e->top_right != 1 - e->top_left)
                    bad("crossing top sides malformed at " + at(e->pos));
                Exact sA = seg_line(e->segA).slope, sB = seg_line(e->segB).slope;
                if (e->top_left == 0 ? !(sA < sB) : !(sB < sA))
                    bad("crossing top sides disagree with the slopes at " + at(e->pos));
                const auto& ra = e->segA->seg_eqs;
                const auto& rb = e->segB->seg_eqs;
                if (std::find(ra.begin(), ra.end(), e) == ra.end() ||
                    std::find(rb.begin(), rb.end(), e) == rb.end())
                    bad("crossing unregistered on a carrier at " + at(e->pos));
                break;
            }
            case EqRec::Kind::WallOver:
            case EqRec::Kind::WallUnder: {
                const PointRec* w = e->wall_top;
                if (!w || w->life == Life::Dead || (w->side == Side::A) != e->wall_is_A) {
                    bad("wall with a broken extreme at " + at(e->pos));
                    break;
                }
                int wix = side_ix(w->side);
                if (e->left_end ? (w->prev || w != head_[wix]) : (w->next || w != tail_[wix]))
                    bad("wall extreme is not the chain end at " + at(e->pos));
                if (!e->oseg || !e->oseg->next || side_ix(e->oseg->side) != 1 - wix ||
                    !(e->oseg->pt.x < e->pos.x && e->pos.x < e->oseg->next->pt.x)) {
                    bad("wall with a broken spanning segment at " + at(e->pos));
                    break;
                }
                if (!(e->pos.x == w->pt.x && e->pos.y == eval(seg_line(e->oseg), e->pos.x)))
                    bad("wall drifted off its segment at " + at(e->pos));
                bool over = e->pos.y < w->pt.y;
                if (over != (e->kind == EqRec::Kind::WallOver))
                    bad("wall polarity wrong at " + at(e->pos));
                int went = wix, woth = 1 - wix;
                int expect = over ? went : woth;
                if (e->left_end ? (e->top_left != -1 || e->top_right != expect)
                                : (e->top_right != -1 || e->top_left != expect))
                    bad("wall top sides malformed at " + at(e->pos));
                const auto& ro = e->oseg->seg_eqs;
                if (std::find(ro.begin(), ro.end(), e) == ro.end())
                    bad("wall unregistered on its segment at " + at(e->pos));
                break;
            }
            case EqRec::Kind::Gap: {
                if (evs.size() != 1) bad("gap record among others");
                if (!e->gapL || !e->gapR || e->gapL->side == e->gapR->side ||
                    !(e->gapL->pt.x < e->gapR->pt.x) || e->gapL->next || e->gapR->prev)
                    bad("gap record ends malformed");
                if (e->top_left != -1 || e->top_right != -1) bad("gap record claims a top side");
                break;
            }
        }
        if (eq_flips(e)) {
            if (e->bridge_missing) bad("record still awaiting its bridge at " + at(e->pos));
            if (!e->brL || !e->brR) {
                bad("flipping record without a bridge at " + at(e->pos));
            } else {
                if (e->brL->life != Life::OnHull || e->brR->life != Life::OnHull ||
                    e->brL->mnext != e->brR)
                    bad("bridge is not a merged-hull edge at " + at(e->pos));
                if (e->brL->side == e->brR->side) bad("bridge joins one side at " + at(e->pos));
                if (e->brL->brFromHere != e || e->brR->brToHere != e)
                    bad("bridge back links broken at " + at(e->pos));
                bool strict = e->kind == EqRec::Kind::Crossing;
                if (strict ? !(e->brL->pt.x < e->pos.x && e->pos.x < e->brR->pt.x)
                           : (e->pos.x < e->brL->pt.x || e->brR->pt.x < e->pos.x))
                    bad("bridge does not span its record at " + at(e->pos));
            }
        } else if (e->brL || e->brR) {
            bad("non-flipping record holds a bridge at " + at(e->pos));
        }
    }
    {
        std::size_t mixed = 0, flips = 0;
        for (const PointRec* p = mhead_; p && p->mnext; p = p->mnext)
            if (p->side != p->mnext->side) ++mixed;
        for (const EqRec* e : evs)
            if (eq_flips(e)) ++flips;
        if (mixed != flips) bad("bridges and mixed hull edges out of balance");
    }
    if (head_[0] && head_[1]) {
        bool disjoint = tail_[0]->pt.x < head_[1]->pt.x || tail_[1]->pt.x < head_[0]->pt.x;
        if (disjoint) {
            if (evs.size() != 1 || evs[0]->kind != EqRec::Kind::Gap)
                bad("disjoint ranges need exactly one gap record");
        } else {
            Exact ox = head_[0]->pt.x < head_[1]->pt.x ? head_[1]->pt.x : head_[0]->pt.x;
            Exact tx = tail_[0]->pt.x < tail_[1]->pt.x ? tail_[0]->pt.x : tail_[1]->pt.x;
            if (evs.size() < 2)
                bad("overlapping ranges without wall records");
            else if (!(evs.front()->pos.x == ox) || !evs.front()->left_end ||
                     evs.front()->kind == EqRec::Kind::Crossing || !(evs.back()->pos.x == tx) ||
                     evs.back()->left_end || evs.back()->kind == EqRec::Kind::Crossing)
                bad("wall records missing from the overlap ends");
        }
        if (!evs.empty() && (endL_ != evs.front() || endR_ != evs.back()))
            bad("overlap end pointers stale");
    } else if (!evs.empty()) {
        bad("records on a single chain");
    }
    for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
        if (evs[i]->top_right == -1 || evs[i]->top_right != evs[i + 1]->top_left)
            bad("neighboring records disagree on the upper side at " + at(evs[i]->pos));
        if (i > 0 && evs[i]->kind != EqRec::Kind::Crossing)
            bad("wall record away from the overlap end at " + at(evs[i]->pos));
    }

    // -- dominance claims: every vertex strictly inside a streak lies on the
    // claimed side of the other curve
    for (int sx = 0; sx < 2 && evs.size() >= 2; ++sx) {
        std::size_t si = 0;
        const PointRec* os = head_[1 - sx];
        for (const PointRec* p = head_[sx]; p; p = p->next) {
            while (si + 2 < evs.size() && !(p->pt.x < evs[si + 1]->pos.x)) ++si;
            if (!(evs[si]->pos.x < p->pt.x) || !(p->pt.x < evs[si + 1]->pos.x)) continue;
            int t = evs[si]->top_right;
            if (t == -1) continue;
            while (os && os->next && !(p->pt.x < os->next->pt.x)) os = os->next;
            if (!os || !os->next || !(os->pt.x < p->pt.x)) continue;
            int sg = side_of_line(seg_line(os), p->pt);
            if (sg == 0)
                bad("vertex exactly on the other curve at " + at(p->pt));
            else if ((sx == t) != (sg > 0))
                bad("dominance claim broken at " + at(p->pt));
        }
    }

    // -- sight lines: frozen copies that still match the chain, hits that
    // still sit on their anchor edges, and spans the outer curve clears
    auto curve_above_strictly = [&](int sx, const LineR2& ln, const Exact& a, const Exact& b,
                                    const PointR2& touch) -> bool {
        // the side-sx input curve must stay above ln on [a, b], strictly
        // except at the single allowed touch point
        const PointRec* q = head_[sx];
        if (!q) return true;
        auto above_at = [&](const Exact& x, const PointRec* seg) {
            Exact cy = eval(seg_line(seg), x);
            Exact ly = eval(ln, x);
            if (cy < ly) return false;
            if (cy == ly && !(x == touch.x && cy == touch.y)) return false;
            return true;
        };
        const PointRec* seg = q;
        while (seg->next && !(a < seg->next->pt.x)) seg = seg->next;
        if (!seg->next || a < seg->pt.x) return true;  // span leaves the chain: nothing to hold
        if (!above_at(a, seg)) return false;
        for (const PointRec* v = seg->next; v && v->pt.x < b; v = v->next) {
            int sg = side_of_line(ln, v->pt);
            if (sg < 0 || (sg == 0 && !(v->pt.x == touch.x && v->pt.y == touch.y))) return false;
            seg = v;
        }
        if (!seg->next || seg->next->pt.x < b) return true;
        return above_at(b, seg);
    };
    std::size_t rays_alive = 0;
    for (const RayIRec& rr : rays_) {
        if (!rr.alive) continue;
        ++rays_alive;
        const RayIRec* ri = &rr;
        const PointRec* p = ri->owner;
        if (!p || p->life != Life::Inside || !p->selected) {
            bad("sight line owned by a non-selected point");
            continue;
        }
        if ((ri->facing_right ? p->rayR : p->rayL) != ri)
            bad("sight line owner back link broken at " + at(p->pt));
        const PointRec* nb = ri->facing_right ? p->prev : p->next;
        if (ri->vertical) {
            if (nb) bad("vertical sight line on a point with a neighbor at " + at(p->pt));
        } else if (!nb) {
            bad("sight line without its defining edge at " + at(p->pt));
        } else {
            LineR2 cur = line_through(nb->pt, p->pt);
            if (!(cur.slope == ri->ln.slope && cur.offset == ri->ln.offset))
                bad("sight line out of date at " + at(p->pt));
        }
        const ScNode* an = ri->anchor;
        if (!an || !an->alive || !an->next) {
            bad("sight line without a live anchor edge at " + at(p->pt));
            continue;
        }
        const PointRec* acar = an->input ? an->input : an->seg;
        if (!acar || acar->side == p->side) bad("sight line anchored on its own chain");
        if (std::find(an->rays.begin(), an->rays.end(), ri) == an->rays.end())
            bad("sight line missing from its anchor edge at " + at(p->pt));
        LineR2 ae = edge_line(an);
        if (ri->clipped) {
            if (ri->vertical) {
                bad("clipped vertical sight line at " + at(p->pt));
                continue;
            }
            if (!(eval(ri->ln, ri->hit.x) == ri->hit.y)) bad("clipped hit off its own line");
            if (ri->hit.x < an->pos.x || an->next->pos.x < ri->hit.x)
                bad("clipped hit outside its anchor edge at " + at(p->pt));
            // No above-the-line test on the anchor nodes themselves: the near
            // node of the first candidate edge sits behind the origin and may
            // legitimately dip under the line; the span check below covers
            // everything from the origin out.
            const SplitterWrap* w = ri->facing_right ? p->wrapR : p->wrapL;
            if (!w || !w->alive) {
                bad("clipped sight line without a stretch at " + at(p->pt));
            } else {
                // Clipping froze the hit at the boundary of the stretch the
                // line was established over; later splits can only shrink it.
                Exact cx = ri->facing_right ? (w->selR ? w->selR->pt.x : w->eqR->pos.x)
                                            : (w->selL ? w->selL->pt.x : w->eqL->pos.x);
                if (ri->facing_right ? ri->hit.x < cx : cx < ri->hit.x)
                    bad("clipped hit short of the stretch boundary");
            }
        } else if (ri->vertical) {
            if (!(ri->hit.x == p->pt.x)) bad("vertical hit off its origin at " + at(p->pt));
            if (!(an->pos.x < ri->hit.x && ri->hit.x < an->next->pos.x))
                bad("hit outside its anchor edge at " + at(p->pt));
            if (!(eval(ae, ri->hit.x) == ri->hit.y)) bad("hit off the anchor edge at " + at(p->pt));
        } else {
            if (!(eval(ae, ri->hit.x) == ri->hit.y) || !(eval(ri->ln, ri->hit.x) == ri->hit.y))
                bad("hit is not the sight line / edge meeting point at " + at(p->pt));
            if (!(an->pos.x < ri->hit.x && ri->hit.x < an->next->pos.x))
                bad("hit outside its anchor edge at " + at(p->pt));
            if (ri->facing_right ? !(p->pt.x < ri->hit.x) : !(ri->hit.x < p->pt.x))
                bad("hit behind its origin at " + at(p->pt));
        }
        if (!ri->vertical) {
            Exact a = ri->facing_right ? p->pt.x : ri->hit.x;
            Exact b = ri->facing_right ? ri->hit.x : p->pt.x;
            if (!curve_above_strictly(1 - side_ix(p->side), ri->ln, a, b, ri->hit))
                bad("outer curve dips under a sight line from " + at(p->pt));
        }
    }

    // -- streak stretches: tiling, membership, and covering certificates
    auto inner_carrier = [](const EqRec* e, int dix) -> const PointRec* {
        switch (e->kind) {
            case EqRec::Kind::Crossing: return dix == 0 ? e->segA : e->segB;
            case EqRec::Kind::WallOver:
                return e->oseg && side_ix(e->oseg->side) == dix ? e->oseg : nullptr;
            default: return nullptr;
        }
    };
    auto boundary_cert = [&](const PointRec* p, bool facing_right, const EqRec* far) -> bool {
        if (far->kind == EqRec::Kind::WallUnder && far->wall_top == p) return true;
        const RayIRec* ri = facing_right ? p->rayR : p->rayL;
        if (!ri || !ri->alive || !ri->clipped) return false;
        if (far->kind == EqRec::Kind::WallUnder)
            return side_of_line(ri->ln, far->wall_top->pt) < 0;
        return true;
    };
    auto shadowed = [](const ColorAnchor& a, const PointRec* u, bool red_side) -> bool {
        if (a.vertical) return false;
        if (red_side ? !(u->pt.x < a.hit.x) : !(a.hit.x < u->pt.x)) return false;
        return side_of_line(a.ln, u->pt) < 0;
    };
    std::size_t wraps_seen = 0;
    for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
        const EqRec* el = evs[i];
        const EqRec* er = evs[i + 1];
        int t = el->top_right;
        if (t == -1 || er->top_left != t) continue;
        int dix = 1 - t;
        const SplitterWrap* w = el->swR;
        const PointRec* lsel = nullptr;
        Exact lx = el->pos.x;
        std::size_t guard = wraps_.size() + pts_.size() + 2;
        for (;;) {
            if (!w || !w->alive) {
                bad("streak tiling broken after x=" + format_exact(lx));
                break;
            }
            ++wraps_seen;
            if (side_ix(w->inner) != dix) bad("stretch filed under the wrong side");
            if ((w->selL != nullptr) == (w->eqL != nullptr) ||
                (w->selR != nullptr) == (w->eqR != nullptr)) {
                bad("stretch needs exactly one boundary of each kind");
                break;
            }
            if (lsel ? w->selL != lsel : w->eqL != el) bad("stretch left boundary out of order");
            if (w->eqL && w->eqL->swR != w) bad("record stretch link broken (left)");
            Exact rx = w->selR ? w->selR->pt.x : w->eqR->pos.x;
            if (rx < lx) bad("stretch boundaries out of x order");
            if (w->selR) {
                const PointRec* q = w->selR;
                if (!q->selected || q->life != Life::Inside || side_ix(q->side) != dix)
                    bad("stretch boundary is not a selected inner point at " + at(q->pt));
                if (q->wrapL != w) bad("selected point stretch link broken at " + at(q->pt));
            } else if (w->eqR != er || er->swL != w) {
                bad("stretch right boundary out of order");
                break;
            }
            // expected membership, walked off the input chain
            std::vector<const PointRec*> want;
            if (w->eqL && w->eqL->kind == EqRec::Kind::WallUnder &&
                !w->eqL->wall_top->selected)
                want.push_back(w->eqL->wall_top);
            {
                const PointRec* q = head_[dix];
                while (q && !(lx < q->pt.x)) q = q->next;
                for (; q && q->pt.x < rx; q = q->next) {
                    if (q->selected) {
                        bad("selected point buried inside a stretch at " + at(q->pt));
                    } else if (q->life != Life::Inside) {
                        bad("non-inner point inside a stretch at " + at(q->pt));
                    } else {
                        want.push_back(q);
                    }
                }
            }
            if (w->eqR && w->eqR->kind == EqRec::Kind::WallUnder &&
                !w->eqR->wall_top->selected)
                want.push_back(w->eqR->wall_top);
            if (w->m.size() != want.size()) {
                bad("stretch holds " + std::to_string(w->m.size()) + " points, chain shows " +
                    std::to_string(want.size()) + " after x=" + format_exact(lx));
            } else if (!want.empty() &&
                       (w->m.min() != want.front() || w->m.max() != want.back())) {
                bad("stretch extremes disagree with the chain after x=" + format_exact(lx));
            }
            if (w->pending_mid != w->m.pending_middle())
                bad("stretch middle block out of sync after x=" + format_exact(lx));
            // required sight lines: only stretches with content force them;
            // lines from older, larger stretches may linger and stay sound
            bool noel = want.empty();
            if (!noel && w->selL && !(w->selL->rayR && w->selL->rayR->alive))
                bad("missing right sight line at " + at(w->selL->pt));
            if (!noel && w->selR && !(w->selR->rayL && w->selR->rayL->alive))
                bad("missing left sight line at " + at(w->selR->pt));
            // the covering certificate itself
            bool covered = false;
            if (w->selL && w->eqR && boundary_cert(w->selL, true, w->eqR)) covered = true;
            if (!covered && w->selR && w->eqL && boundary_cert(w->selR, false, w->eqL))
                covered = true;
            if (!covered) {
                if (noel) {
                    // nothing inside needs sealing; record-bounded emptiness
                    // still pins both records onto one inner segment
                    if (w->eqL && w->eqR) {
                        const PointRec* ca = inner_carrier(w->eqL, dix);
                        const PointRec* cb = inner_carrier(w->eqR, dix);
                        if (!ca || ca != cb)
                            bad("empty record-bounded stretch spans several segments");
                    }
                } else {
                    for (const PointRec* u : want)
                        if (!(w->ancL && shadowed(*w->ancL, u, true)) &&
                            !(w->ancR && shadowed(*w->ancR, u, false)))
                            bad("uncovered stretch point at " + at(u->pt));
                }
            }
            // frozen anchors must still run under the outer curve
            auto anchor_sound = [&](const ColorAnchor& anc, bool red_side) {
                if (anc.vertical) return;
                Exact a = red_side ? lx : (anc.hit.x < lx ? lx : anc.hit.x);
                Exact b = red_side ? (rx < anc.hit.x ? rx : anc.hit.x) : rx;
                if (b < a) return;
                if (!curve_above_strictly(t, anc.ln, a, b, anc.hit))
                    bad("outer curve dips under a frozen anchor after x=" + format_exact(lx));
            };
            if (w->ancL) anchor_sound(*w->ancL, true);
            if (w->ancR) anchor_sound(*w->ancR, false);
            if (w->selR) {
                lsel = w->selR;
                lx = lsel->pt.x;
                w = lsel->wrapR;
            } else {
                break;
            }
            if (--guard == 0) {
                bad("streak tiling does not terminate");
                break;
            }
        }
    }
    {
        std::size_t alive_wraps = 0;
        for (const SplitterWrap& w : wraps_)
            if (w.alive) ++alive_wraps;
        if (alive_wraps != wraps_seen) bad("stretch splitters detached from the streaks");
    }

    // -- compression: between carrying edges the outer chain keeps short runs
    {
        const ScNode* cursor[2] = {chead_[0], chead_[1]};
        for (std::size_t i = 0; i + 1 < evs.size(); ++i) {
            int t = evs[i]->top_right;
            if (t == -1 || evs[i + 1]->top_left != t) continue;
            const ScNode*& z0 = cursor[t];
            while (z0 && z0->next && !(evs[i]->pos.x < z0->next->pos.x)) z0 = z0->next;
            if (!z0) continue;
            const ScNode* va = z0;
            while (va->next && !(evs[i + 1]->pos.x < va->next->pos.x)) va = va->next;
            int run = 0;
            for (const ScNode* z = z0; z != va;) {
                z = z->next;
                ++run;
                if (z == va || !z->rays.empty() || edge_has_eq(z)) {
                    if (run > 3)
                        bad("free run of " + std::to_string(run) + " edges before x=" +
                            format_exact(z->pos.x));
                    run = 0;
                }
            }
        }
    }

    // -- the potential ledger
    {
        std::int64_t phi = 0;
        for (const PointRec& p : pts_) phi += life_phi(p.life, p.selected);
        for (const SplitterWrap& w : wraps_)
            if (w.alive) phi += std::int64_t(w.pending_mid);
        if (phi != phi_)
            bad("potential ledger off by " + std::to_string(static_cast<long long>(phi_ - phi)));
        if (!fresh_eqs_.empty()) bad("records from the last operation still awaiting bridges");
        (void)rays_alive;
    }
    return out;
}

} // namespace hullkit
