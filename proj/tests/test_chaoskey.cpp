#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "skg/chaoskey.hpp"
#include "skg/errors.hpp"

using namespace skg;

TEST_CASE("fixed_sin agrees with libm sin to 1e-9 over a wide range") {
    for (double x = -20.0; x <= 20.0; x += 0.0173) {
        CHECK(std::abs(fixed_sin(x) - std::sin(x)) < 1e-9);
    }
    CHECK(fixed_sin(0.0) == 0.0);
    CHECK(std::abs(fixed_sin(1e6)) <= 1.0);
}

TEST_CASE("keystream is deterministic for a fixed key") {
    ChaosKey key;
    Keystream a = generate_keystream(key, 256, 4);
    Keystream b = generate_keystream(key, 256, 4);
    CHECK(a.f == b.f);
    CHECK(a.zeta == b.zeta);
    CHECK(a.tau == b.tau);
    CHECK(a.f.size() == 256);
    CHECK(a.tau.size() == 36);
}

TEST_CASE("keystream invariants: amplitude positive, phase in [0,1), tau ranges") {
    ChaosKey key;
    key.x0 = 0.123456789;
    key.y0 = 0.987654321;
    Keystream ks = generate_keystream(key, 1000, 20);
    for (double f : ks.f) {
        CHECK(f > 0.0);
        CHECK(f <= 1.0);
    }
    for (double z : ks.zeta) {
        CHECK(z >= 0.0);
        CHECK(z < 1.0);
    }
    for (std::size_t p = 0; p < 20; ++p) {
        const double alpha = ks.tau[9 * p];
        CHECK(alpha > 0.0);
        CHECK(alpha < 4.0);
        for (int s = 1; s < 9; ++s) {
            const double v = ks.tau[9 * p + s];
            CHECK(v == std::floor(v));
            CHECK(v >= 0.0);
            CHECK(v <= 3.0);
        }
    }
}

TEST_CASE("1e-10 perturbation of x0 decorrelates >= 90% of the stream") {
    ChaosKey a;
    ChaosKey b = a;
    b.x0 += 1e-10;
    Keystream ka = generate_keystream(a, 1000, 1);
    Keystream kb = generate_keystream(b, 1000, 1);
    int differing = 0;
    for (std::size_t i = 0; i < 1000; ++i)
        if (std::abs(ka.f[i] - kb.f[i]) > 1e-3 || std::abs(ka.zeta[i] - kb.zeta[i]) > 1e-3)
            ++differing;
    CHECK(differing >= 900);
}

TEST_CASE("boundary parameters are rejected") {
    ChaosKey key;
    key.x0 = 0.0;
    CHECK_THROWS(key.validate());
    key = ChaosKey{};
    key.x0 = 1.0;
    CHECK_THROWS(key.validate());
    key = ChaosKey{};
    key.y0 = -0.2;
    CHECK_THROWS(key.validate());
    key = ChaosKey{};
    key.map_param = 1.0;
    CHECK_THROWS(key.validate());
    key = ChaosKey{};
    key.amplitude_offset = 0.0;
    CHECK_THROWS(key.validate());
    CHECK_THROWS(generate_keystream(ChaosKey{}, 0, 1));
    CHECK_THROWS(generate_keystream(ChaosKey{}, 1, 0));
}

TEST_CASE("keyspace size in bits") {
    CHECK(keyspace_bits() == 191);
    CHECK(keyspace_bits(3) == 191);
    CHECK(keyspace_bits(2) == 138);
    CHECK(keyspace_bits(4) == 244);
}

TEST_CASE("key file round trip and fixture key") {
    ChaosKey fixture = load_key(std::string(SKG_DATA_DIR) + "/key.txt");
    CHECK(fixture.burn_in == 1000);
    CHECK(fixture.amplitude_offset == doctest::Approx(0.5));

    ChaosKey key;
    key.x0 = 0.12345678901234567;
    key.y0 = 0.98765432109876543;
    key.map_param = 0.55555555555555558;
    key.burn_in = 777;
    key.amplitude_offset = 0.25;
    const std::string path = "/tmp/skg_key_roundtrip.txt";
    save_key(key, path);
    ChaosKey back = load_key(path);
    CHECK(back.x0 == key.x0);
    CHECK(back.y0 == key.y0);
    CHECK(back.map_param == key.map_param);
    CHECK(back.burn_in == key.burn_in);
    CHECK(back.amplitude_offset == key.amplitude_offset);
    std::remove(path.c_str());
}

TEST_CASE("malformed key files raise parse errors with line numbers") {
    const std::string path = "/tmp/skg_key_bad.txt";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("x0=0.5\nnonsense line\n", f);
        std::fclose(f);
    }
    try {
        load_key(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 2);
    }
    std::remove(path.c_str());
}
