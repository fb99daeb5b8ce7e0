#include "leachsim/geometry.hpp"
#include "leachsim/rng.hpp"

#include <doctest.h>

using namespace leachsim;

TEST_CASE("distance") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({7, 7}, {7, 7}) == 0.0);
    CHECK(distance({0, 0}, {100, 100}) == doctest::Approx(141.4214).epsilon(1e-6));
}

TEST_CASE("distance is symmetric and non-negative") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Position a{rng.uniform(-50, 150), rng.uniform(-50, 150)};
        const Position b{rng.uniform(-50, 150), rng.uniform(-50, 150)};
        CHECK(distance(a, b) == distance(b, a));
        CHECK(distance(a, b) >= 0.0);
    }
}

TEST_CASE("midpoint") {
    const Position m = midpoint({0, 0}, {100, 100});
    CHECK(m.x == 50.0);
    CHECK(m.y == 50.0);
    const Position same = midpoint({3.5, 3.5}, {3.5, 3.5});
    CHECK(same.x == 3.5);
    CHECK(same.y == 3.5);
    const Position p = midpoint({10, 40}, {30, 0});
    CHECK(p.x == 20.0);
    CHECK(p.y == 20.0);
}

TEST_CASE("rng determinism and ranges") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    Rng c(42);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(c.uniform_index(17) < 17);
    }
}

TEST_CASE("rng substreams are independent of each other") {
    Rng deploy = Rng::substream(99, Rng::Stream::Deployment);
    Rng elect = Rng::substream(99, Rng::Stream::Election);
    CHECK(deploy.next_u64() != elect.next_u64());

    // Same tag and seed always reproduces the stream.
    Rng again = Rng::substream(99, Rng::Stream::Deployment);
    Rng reference = Rng::substream(99, Rng::Stream::Deployment);
    for (int i = 0; i < 100; ++i) {
        CHECK(again.next_u64() == reference.next_u64());
    }
}
