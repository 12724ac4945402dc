#include "skg/chaoskey.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "skg/errors.hpp"

namespace skg {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double fixed_sin(double x) {
    // Range-reduce to [-pi/2, pi/2] around the nearest multiple of pi, then a
    // fixed odd Taylor polynomial. Not the platform libm: the keystream must be
    // reproducible bit-for-bit between builds.
    const double k = std::floor(x / kPi + 0.5);
    const double r = x - k * kPi;
    const double r2 = r * r;
    // r - r^3/3! + r^5/5! - ... - r^15/15!
    double term = r;
    double sum = r;
    const double denoms[] = {6.0, 20.0, 42.0, 72.0, 110.0, 156.0, 210.0};
    for (double d : denoms) {
        term *= -r2 / d;
        sum += term;
    }
    const double sign = (static_cast<long long>(k) % 2 == 0) ? 1.0 : -1.0;
    return std::clamp(sign * sum, -1.0, 1.0);
}

void ChaosKey::validate() const {
    if (!(x0 > 0.0 && x0 < 1.0)) throw std::invalid_argument("ChaosKey: x0 must be in (0,1)");
    if (!(y0 > 0.0 && y0 < 1.0)) throw std::invalid_argument("ChaosKey: y0 must be in (0,1)");
    if (!(map_param > 0.0 && map_param < 1.0))
        throw std::invalid_argument("ChaosKey: map_param must be in (0,1)");
    if (!(amplitude_offset > 0.0))
        throw std::invalid_argument("ChaosKey: amplitude_offset must be positive");
}

namespace {

struct Orbit {
    double x, y, theta;

    void step() {
        const double xn = fixed_sin(kPi * (4.0 * theta * x * (1.0 - x) + (1.0 - theta) * fixed_sin(kPi * y)));
        const double yn = fixed_sin(kPi * (4.0 * theta * y * (1.0 - y) + (1.0 - theta) * fixed_sin(kPi * xn)));
        x = xn;
        y = yn;
    }
};

double frac(double v) { return v - std::floor(v); }

}  // namespace

Keystream generate_keystream(const ChaosKey& key, std::size_t num_symbols,
                             std::size_t num_packets) {
    key.validate();
    if (num_symbols < 1 || num_packets < 1)
        throw std::invalid_argument("generate_keystream: counts must be >= 1");

    Orbit orbit{key.x0, key.y0, key.map_param};
    for (std::uint32_t i = 0; i < key.burn_in; ++i) {
        const double px = orbit.x, py = orbit.y;
        orbit.step();
        if (std::abs(orbit.x - px) < 1e-15 && std::abs(orbit.y - py) < 1e-15)
            throw DegenerateKeyError("chaotic orbit reached a fixed point during burn-in");
    }

    Keystream ks;
    ks.f.reserve(num_symbols);
    ks.zeta.reserve(num_symbols);
    for (std::size_t i = 0; i < num_symbols; ++i) {
        orbit.step();
        ks.f.push_back(std::max(std::abs(orbit.x), 1e-9));
        double z = frac(std::abs(orbit.y));
        if (z >= 1.0) z = 0.0;
        ks.zeta.push_back(z);
    }

    ks.tau.reserve(9 * num_packets);
    for (std::size_t p = 0; p < num_packets; ++p) {
        for (int slot = 0; slot < 9; ++slot) {
            orbit.step();
            const double u = frac(std::abs(orbit.x));
            if (slot == 0) {
                // Transform order alpha in the open interval (0, 4).
                ks.tau.push_back(4.0 * std::clamp(u, 1e-9, 1.0 - 1e-12));
            } else {
                // Integer scale-vector entry in {0,1,2,3}.
                ks.tau.push_back(std::min(3.0, std::floor(4.0 * u)));
            }
        }
    }
    return ks;
}

std::size_t keyspace_bits(std::size_t num_reals) {
    // Each real carries its 53 mantissa bits; burn-in and offset add 16 bits each.
    return 53 * num_reals + 16 + 16;
}

ChaosKey load_key(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open key file: " + path);
    ChaosKey key;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("key file line missing '='", lineno);
        const std::string name = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (name == "x0") key.x0 = std::stod(value);
            else if (name == "y0") key.y0 = std::stod(value);
            else if (name == "theta") key.map_param = std::stod(value);
            else if (name == "burn_in") key.burn_in = static_cast<std::uint32_t>(std::stoul(value));
            else if (name == "varpi") key.amplitude_offset = std::stod(value);
            else throw ParseError("unknown key field '" + name + "'", lineno);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad value for key field '" + name + "'", lineno);
        }
    }
    key.validate();
    return key;
}

void save_key(const ChaosKey& key, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write key file: " + path);
    out << std::setprecision(17);
    out << "x0=" << key.x0 << "\n";
    out << "y0=" << key.y0 << "\n";
    out << "theta=" << key.map_param << "\n";
    out << "burn_in=" << key.burn_in << "\n";
    out << "varpi=" << key.amplitude_offset << "\n";
}

}  // namespace skg
