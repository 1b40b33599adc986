#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "vcm/geometry.hpp"

namespace vcm {

struct AccessStats {
    std::size_t node_accesses = 0;
    std::size_t emitted = 0;
    std::size_t pruned = 0;
};

inline constexpr std::size_t kRtreeEntryBytes = 40;  // mbr + id, as paged on disk

// bulk-loaded (sort-tile-recursive) R-tree over rectangles
template <typename Payload>
class StrTree {
public:
    struct Entry {
        Rect mbr;
        Payload item;
    };

    using PruneFn = std::function<bool(const Rect&)>;

    StrTree() = default;

    static StrTree build(std::vector<Entry> input, std::size_t page_size = 1024) {
        StrTree t;
        t.fanout_ = std::max<std::size_t>(2, page_size / kRtreeEntryBytes);
        t.entries_.reserve(input.size());
        for (std::size_t i = 0; i < input.size(); ++i) {
            t.entries_.push_back(Slot{input[i].mbr, std::move(input[i].item), i});
        }
        t.pack();
        return t;
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    std::size_t fanout() const { return fanout_; }
    std::size_t height() const { return height_; }
    Rect root_mbr() const { return nodes_.empty() ? Rect{} : nodes_[root_].mbr; }

    // least-mindist-first stream of entries relative to a query segment;
    // subtrees failing the prune callback or past the distance limit are skipped
    class NearestStream {
    public:
        struct Item {
            double dist;
            bool is_entry;
            std::size_t idx;  // node index or entry index
            std::size_t seq;  // insertion order, breaks distance ties

            bool operator>(const Item& o) const {
                if (dist != o.dist) return dist > o.dist;
                if (is_entry != o.is_entry) return is_entry && !o.is_entry;
                return seq > o.seq;
            }
        };

        NearestStream(const StrTree* t, Segment q, double limit, PruneFn prune, AccessStats* stats)
            : tree_(t), query_(q), limit_(limit), prune_(std::move(prune)), stats_(stats) {
            if (!tree_->entries_.empty()) {
                push_node(tree_->root_);
            }
        }

        // next entry or nullptr when exhausted
        const Entry* next() {
            while (!heap_.empty()) {
                Item it = heap_.top();
                heap_.pop();
                if (it.dist > limit_ + kEps) {
                    heap_ = {};
                    return nullptr;
                }
                if (it.is_entry) {
                    const Slot& s = tree_->entries_[it.idx];
                    if (prune_ && prune_(s.mbr)) {
                        if (stats_) ++stats_->pruned;
                        continue;
                    }
                    if (stats_) ++stats_->emitted;
                    out_ = Entry{s.mbr, s.item};
                    return &out_;
                }
                const Node& n = tree_->nodes_[it.idx];
                if (prune_ && prune_(n.mbr)) continue;
                if (stats_) ++stats_->node_accesses;
                if (n.leaf) {
                    for (std::size_t e = n.begin; e < n.end; ++e) {
                        const Slot& s = tree_->entries_[e];
                        heap_.push(Item{rect_segment_mindist(s.mbr, query_), true, e, s.seq});
                    }
                } else {
                    for (std::size_t c = n.begin; c < n.end; ++c) {
                        push_node(tree_->children_[c]);
                    }
                }
            }
            return nullptr;
        }

    private:
        void push_node(std::size_t idx) {
            const Node& n = tree_->nodes_[idx];
            heap_.push(Item{rect_segment_mindist(n.mbr, query_), false, idx, idx});
        }

        const StrTree* tree_;
        Segment query_;
        double limit_;
        PruneFn prune_;
        AccessStats* stats_;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
        Entry out_{};
    };

    NearestStream nearest_stream(Segment q,
                                 double limit = std::numeric_limits<double>::infinity(),
                                 PruneFn prune = nullptr, AccessStats* stats = nullptr) const {
        return NearestStream(this, q, limit, std::move(prune), stats);
    }

    // every entry whose mbr meets the probe and passes the test
    template <typename Test, typename Out>
    void query(const Rect& probe, Test&& test, Out&& out, AccessStats* stats = nullptr) const {
        if (entries_.empty()) return;
        query_rec(root_, probe, test, out, stats);
    }

private:
    struct Slot {
        Rect mbr;
        Payload item;
        std::size_t seq;
    };
    struct Node {
        Rect mbr;
        bool leaf = true;
        std::size_t begin = 0;  // range into entries_ (leaf) or children_ (internal)
        std::size_t end = 0;
    };

    template <typename Test, typename Out>
    void query_rec(std::size_t ni, const Rect& probe, Test& test, Out& out,
                   AccessStats* stats) const {
        const Node& n = nodes_[ni];
        if (!n.mbr.intersects(probe)) return;
        if (stats) ++stats->node_accesses;
        if (n.leaf) {
            for (std::size_t e = n.begin; e < n.end; ++e) {
                const Slot& s = entries_[e];
                if (s.mbr.intersects(probe) && test(s.mbr, s.item)) out(s.item);
            }
        } else {
            for (std::size_t c = n.begin; c < n.end; ++c) {
                query_rec(children_[c], probe, test, out, stats);
            }
        }
    }

    // sort-tile-recursive packing, bottom level first
    void pack() {
        nodes_.clear();
        children_.clear();
        height_ = 0;
        if (entries_.empty()) return;

        std::vector<std::size_t> order(entries_.size());
        std::iota(order.begin(), order.end(), 0);
        tile(order, true);
        std::size_t level_begin = 0;
        std::size_t level_end = nodes_.size();
        height_ = 1;
        while (level_end - level_begin > 1) {
            std::vector<std::size_t> idx(level_end - level_begin);
            std::iota(idx.begin(), idx.end(), level_begin);
            tile(idx, false);
            level_begin = level_end;
            level_end = nodes_.size();
            ++height_;
        }
        root_ = nodes_.size() - 1;
    }

    Point slot_center(std::size_t i, bool leaf_level) const {
        return leaf_level ? entries_[i].mbr.center() : nodes_[i].mbr.center();
    }

    // group the given entries/nodes into parent nodes in x-slab, y-run order
    void tile(std::vector<std::size_t>& idx, bool leaf_level) {
        std::size_t n = idx.size();
        std::size_t pages = (n + fanout_ - 1) / fanout_;
        std::size_t slabs = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(pages))));
        std::size_t per_slab = (n + slabs - 1) / slabs;

        auto cmp = [&](double ax, double bx, std::size_t a, std::size_t b) {
            if (ax != bx) return ax < bx;
            return a < b;
        };
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return cmp(slot_center(a, leaf_level).x, slot_center(b, leaf_level).x, a, b);
        });
        if (leaf_level) {
            std::vector<Slot> reordered;
            reordered.reserve(n);
            // sort each slab by y, then rewrite the arena in final order
            for (std::size_t s = 0; s * per_slab < n; ++s) {
                auto first = idx.begin() + s * per_slab;
                auto last = idx.begin() + std::min(n, (s + 1) * per_slab);
                std::sort(first, last, [&](std::size_t a, std::size_t b) {
                    return cmp(entries_[a].mbr.center().y, entries_[b].mbr.center().y, a, b);
                });
            }
            for (std::size_t i : idx) reordered.push_back(std::move(entries_[i]));
            entries_ = std::move(reordered);
            for (std::size_t at = 0; at < n; at += fanout_) {
                std::size_t end = std::min(n, at + fanout_);
                Node node{entries_[at].mbr, true, at, end};
                for (std::size_t e = at + 1; e < end; ++e) node.mbr = node.mbr.expanded(entries_[e].mbr);
                nodes_.push_back(node);
            }
        } else {
            for (std::size_t s = 0; s * per_slab < n; ++s) {
                auto first = idx.begin() + s * per_slab;
                auto last = idx.begin() + std::min(n, (s + 1) * per_slab);
                std::sort(first, last, [&](std::size_t a, std::size_t b) {
                    return cmp(nodes_[a].mbr.center().y, nodes_[b].mbr.center().y, a, b);
                });
            }
            for (std::size_t at = 0; at < n; at += fanout_) {
                std::size_t end = std::min(n, at + fanout_);
                Node node{nodes_[idx[at]].mbr, false, children_.size(), children_.size()};
                for (std::size_t e = at; e < end; ++e) {
                    node.mbr = node.mbr.expanded(nodes_[idx[e]].mbr);
                    children_.push_back(idx[e]);
                }
                node.end = children_.size();
                nodes_.push_back(node);
            }
        }
    }

    std::vector<Slot> entries_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> children_;
    std::size_t fanout_ = 25;
    std::size_t root_ = 0;
    std::size_t height_ = 0;
};

}  // namespace vcm
