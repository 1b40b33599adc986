#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "vcm/rtree.hpp"

using namespace vcm;

namespace {

double urand(std::mt19937_64& g, double lo, double hi) {
    double u = (g() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

std::vector<StrTree<int>::Entry> random_entries(std::mt19937_64& g, int n) {
    std::vector<StrTree<int>::Entry> es;
    es.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = urand(g, 100, 9000);
        double y = urand(g, 100, 9000);
        es.push_back({{x, y, x + urand(g, 5, 400), y + urand(g, 5, 400)}, i});
    }
    return es;
}

struct Ranked {
    double dist;
    std::size_t seq;
    int item;
};

std::vector<Ranked> rank_all(const std::vector<StrTree<int>::Entry>& es, Segment q) {
    std::vector<Ranked> r;
    for (std::size_t i = 0; i < es.size(); ++i) {
        r.push_back({rect_segment_mindist(es[i].mbr, q), i, es[i].item});
    }
    std::sort(r.begin(), r.end(), [](const Ranked& a, const Ranked& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.seq < b.seq;
    });
    return r;
}

}  // namespace

TEST_CASE("packing heights at the page fanout") {
    std::mt19937_64 g(3);
    CHECK(StrTree<int>::build(random_entries(g, 1), 1024).height() == 1);
    CHECK(StrTree<int>::build(random_entries(g, 25), 1024).height() == 1);
    CHECK(StrTree<int>::build(random_entries(g, 26), 1024).height() == 2);
    CHECK(StrTree<int>::build(random_entries(g, 625), 1024).height() == 2);
    CHECK(StrTree<int>::build(random_entries(g, 626), 1024).height() == 3);
    CHECK(StrTree<int>::build(random_entries(g, 1000), 1024).height() == 3);
    CHECK(StrTree<int>::build(random_entries(g, 1000), 1024).fanout() == 25);
    CHECK(StrTree<int>::build({}, 1024).empty());
}

TEST_CASE("nearest stream emits every entry in distance order") {
    std::mt19937_64 g(17);
    auto es = random_entries(g, 600);
    auto tree = StrTree<int>::build(es, 1024);
    // query outside the populated area: distances are distinct almost surely
    Segment q{{-500, 0}, {-500, 9000}};
    auto oracle = rank_all(es, q);

    AccessStats st;
    auto stream = tree.nearest_stream(q, std::numeric_limits<double>::infinity(), nullptr, &st);
    std::size_t at = 0;
    while (const auto* e = stream.next()) {
        REQUIRE(at < oracle.size());
        CHECK(e->item == oracle[at].item);
        ++at;
    }
    CHECK(at == es.size());
    CHECK(st.emitted == es.size());
    CHECK(st.pruned == 0);
    CHECK(st.node_accesses > 0);
}

TEST_CASE("distance limit cuts the stream exactly") {
    std::mt19937_64 g(19);
    auto es = random_entries(g, 400);
    auto tree = StrTree<int>::build(es, 1024);
    Segment q{{-200, 4000}, {-200, 4200}};
    auto oracle = rank_all(es, q);

    // place the limit inside a comfortable gap so the cut is unambiguous
    std::size_t keep = 150;
    double limit = (oracle[keep - 1].dist + oracle[keep].dist) / 2.0;
    REQUIRE(oracle[keep].dist - oracle[keep - 1].dist > 1e-6);

    AccessStats st;
    auto stream = tree.nearest_stream(q, limit, nullptr, &st);
    std::size_t at = 0;
    while (const auto* e = stream.next()) {
        CHECK(e->item == oracle[at].item);
        CHECK(oracle[at].dist <= limit);
        ++at;
    }
    CHECK(at == keep);
}

TEST_CASE("prune callback removes exactly the flagged region") {
    std::mt19937_64 g(23);
    auto es = random_entries(g, 500);
    auto tree = StrTree<int>::build(es, 1024);
    Segment q{{-100, -100}, {-90, -100}};
    Rect blocked{3000, 3000, 7000, 7000};
    auto contained = [&](const Rect& r) {
        return r.xmin >= blocked.xmin && r.ymin >= blocked.ymin && r.xmax <= blocked.xmax &&
               r.ymax <= blocked.ymax;
    };

    std::set<int> expect;
    std::size_t contained_count = 0;
    for (const auto& e : es) {
        if (contained(e.mbr)) {
            ++contained_count;
        } else {
            expect.insert(e.item);
        }
    }
    REQUIRE(contained_count > 10);

    AccessStats st;
    auto stream = tree.nearest_stream(q, std::numeric_limits<double>::infinity(),
                                      contained, &st);
    std::set<int> got;
    double prev = -1.0;
    while (const auto* e = stream.next()) {
        CHECK_FALSE(contained(e->mbr));
        double d = rect_segment_mindist(e->mbr, q);
        CHECK(d >= prev - kEps);
        prev = d;
        got.insert(e->item);
    }
    CHECK(got == expect);
    CHECK(st.emitted == expect.size());
    // subtrees wholly inside the blocked box are skipped without touching entries
    CHECK(st.pruned <= contained_count);
}

TEST_CASE("rectangle query matches a linear scan") {
    std::mt19937_64 g(29);
    auto es = random_entries(g, 700);
    auto tree = StrTree<int>::build(es, 1024);
    for (int k = 0; k < 60; ++k) {
        double x = urand(g, 0, 9000), y = urand(g, 0, 9000);
        Rect probe{x, y, x + urand(g, 50, 2500), y + urand(g, 50, 2500)};
        auto odd = [](const Rect&, int item) { return item % 2 == 1; };
        std::set<int> expect;
        for (const auto& e : es) {
            if (e.mbr.intersects(probe) && e.item % 2 == 1) expect.insert(e.item);
        }
        std::set<int> got;
        AccessStats st;
        tree.query(probe, odd, [&](int item) { got.insert(item); }, &st);
        CHECK(got == expect);
        CHECK(st.node_accesses >= 1);
    }
}

TEST_CASE("empty tree streams and queries are inert") {
    StrTree<int> t = StrTree<int>::build({});
    auto s = t.nearest_stream({{0, 0}, {1, 0}});
    CHECK(s.next() == nullptr);
    int hits = 0;
    t.query({0, 0, 100, 100}, [](const Rect&, int) { return true; }, [&](int) { ++hits; });
    CHECK(hits == 0);
}

TEST_CASE("rebuilds from identical input stream identically") {
    std::mt19937_64 g(31);
    auto es = random_entries(g, 300);
    auto t1 = StrTree<int>::build(es, 1024);
    auto t2 = StrTree<int>::build(es, 1024);
    Segment q{{4000, -50}, {5000, -50}};
    auto s1 = t1.nearest_stream(q);
    auto s2 = t2.nearest_stream(q);
    while (true) {
        const auto* a = s1.next();
        const auto* b = s2.next();
        if (!a || !b) {
            CHECK(a == nullptr);
            CHECK(b == nullptr);
            break;
        }
        CHECK(a->item == b->item);
    }
}
