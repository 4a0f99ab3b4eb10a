#include "etc/cipher.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "etc/keystream.hpp"

namespace etc {

using nlohmann::json;

CipherConfig CipherConfig::for_type(PuzzleType type, int block_w, int block_h) {
    StepFlags f = steps_of(type);
    CipherConfig c;
    c.block_w = block_w;
    c.block_h = block_h;
    c.scramble = f.scramble;
    c.rotation = f.rotation;
    c.inversion = f.inversion;
    c.negpos = f.negpos;
    c.colorshuffle = f.colorshuffle;
    return c;
}

std::string CipherConfig::type_name() const {
    auto t = type_label();
    return t ? to_string(*t) : "custom";
}

KeyExpansion expand_key(const SecretKey& key, int n, const CipherConfig& config) {
    if (n < 1) throw ConfigError("key expansion requires at least one block");

    KeyExpansion exp;
    exp.permutation.resize(static_cast<size_t>(n));
    std::iota(exp.permutation.begin(), exp.permutation.end(), 0u);
    if (config.scramble) {
        Keystream ks(key.k1);
        fisher_yates(exp.permutation, ks);
    }

    exp.transforms.assign(static_cast<size_t>(n), BlockTransform{});
    if (config.rotation || config.inversion) {
        Keystream ks(key.k2);
        for (auto& t : exp.transforms) {
            if (config.rotation) t.rotation = Rotation(ks.uniform(4));
            if (config.inversion) t.inversion = Inversion(ks.uniform(3));
        }
    }
    if (config.negpos) {
        Keystream ks(key.k3);
        for (auto& t : exp.transforms) t.negpos = ks.next_bit();
    }
    if (config.colorshuffle) {
        Keystream ks(key.k4);
        for (auto& t : exp.transforms) t.color_perm = static_cast<ColorPerm>(ks.uniform(6));
    }
    return exp;
}

namespace {

void check_block_shape(const CipherConfig& config) {
    if (config.block_w != config.block_h && (config.rotation || config.inversion))
        throw ConfigError("rectangular blocks are only supported with rotation and inversion disabled");
}

} // namespace

RasterImage encrypt(const RasterImage& image, const SecretKey& key, const CipherConfig& config) {
    check_block_shape(config);
    BlockGrid grid = partition(image, config.block_w, config.block_h);
    KeyExpansion exp = expand_key(key, grid.count(), config);

    BlockGrid out = grid;
    for (int slot = 0; slot < grid.count(); ++slot)
        out.blocks[slot] = apply_transform(grid.blocks[exp.permutation[slot]], exp.transforms[slot]);
    return reassemble(out);
}

RasterImage decrypt(const RasterImage& image, const SecretKey& key, const CipherConfig& config) {
    check_block_shape(config);
    if (image.width % config.block_w != 0 || image.height % config.block_h != 0)
        throw DimensionError("ciphertext dimensions must be exact block multiples");
    BlockGrid grid = partition(image, config.block_w, config.block_h);
    KeyExpansion exp = expand_key(key, grid.count(), config);

    BlockGrid out = grid;
    for (int slot = 0; slot < grid.count(); ++slot)
        out.blocks[exp.permutation[slot]] = apply_transform(grid.blocks[slot], invert_transform(exp.transforms[slot]));
    return reassemble(out);
}

KeySpace key_space(int n, const CipherConfig& config) {
    if (n < 1) throw ConfigError("key space requires at least one block");
    KeySpace ks;
    ks.value = BigUint(1);
    if (config.scramble) {
        ks.value *= BigUint::factorial(static_cast<uint64_t>(n));
        for (int i = 2; i <= n; ++i) ks.log2 += std::log2(double(i));
    }
    auto add_power = [&](bool enabled, uint64_t base) {
        if (!enabled) return;
        ks.value *= BigUint::pow(base, static_cast<uint64_t>(n));
        ks.log2 += n * std::log2(double(base));
    };
    add_power(config.rotation, 4);
    add_power(config.inversion, 3);
    add_power(config.negpos, 2);
    add_power(config.colorshuffle, 6);
    return ks;
}

SecretKey keygen(uint64_t seed) {
    SecretKey k;
    k.k1 = mix64(seed ^ 1);
    k.k2 = mix64(seed ^ 2);
    k.k3 = mix64(seed ^ 3);
    k.k4 = mix64(seed ^ 4);
    return k;
}

KeyFile read_key_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open key file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed key file " + path + ": " + e.what());
    }
    KeyFile kf;
    try {
        kf.key.k1 = std::stoull(j.at("k1").get<std::string>());
        kf.key.k2 = std::stoull(j.at("k2").get<std::string>());
        kf.key.k3 = std::stoull(j.at("k3").get<std::string>());
        kf.key.k4 = std::stoull(j.at("k4").get<std::string>());
        const json& c = j.at("config");
        kf.config.block_w = c.at("block_w").get<int>();
        kf.config.block_h = c.at("block_h").get<int>();
        if (c.contains("type")) {
            PuzzleType t = puzzle_type_from_string(c.at("type").get<std::string>());
            kf.config = CipherConfig::for_type(t, kf.config.block_w, kf.config.block_h);
        } else {
            kf.config.scramble = c.at("scramble").get<bool>();
            kf.config.rotation = c.at("rotation").get<bool>();
            kf.config.inversion = c.at("inversion").get<bool>();
            kf.config.negpos = c.at("negpos").get<bool>();
            kf.config.colorshuffle = c.at("colorshuffle").get<bool>();
        }
    } catch (const json::exception& e) {
        throw IoError("key file " + path + " missing field: " + e.what());
    }
    return kf;
}

void write_key_file(const KeyFile& kf, const std::string& path) {
    json c;
    c["block_w"] = kf.config.block_w;
    c["block_h"] = kf.config.block_h;
    if (auto t = kf.config.type_label()) {
        c["type"] = to_string(*t);
    } else {
        c["scramble"] = kf.config.scramble;
        c["rotation"] = kf.config.rotation;
        c["inversion"] = kf.config.inversion;
        c["negpos"] = kf.config.negpos;
        c["colorshuffle"] = kf.config.colorshuffle;
    }
    json j;
    j["k1"] = std::to_string(kf.key.k1);
    j["k2"] = std::to_string(kf.key.k2);
    j["k3"] = std::to_string(kf.key.k3);
    j["k4"] = std::to_string(kf.key.k4);
    j["config"] = c;

    std::ofstream out(path);
    if (!out) throw IoError("cannot create key file " + path);
    out << j.dump(2) << "\n";
}

} // namespace etc
