#include <doctest.h>

#include <cstdio>

#include "etc/cipher.hpp"
#include "etc/jpeg_channel.hpp"
#include "etc/synth.hpp"
#include "helpers.hpp"

using namespace etc;

TEST_SUITE_BEGIN("channel");

TEST_CASE("bypass at both hops is bit exact") {
    RasterImage img = test::random_image(64, 48, 40);
    ChannelConfig cfg; // both hops bypass
    CHECK(transmit(img, cfg) == img);
}

TEST_CASE("quality 100 on a constant image is near exact") {
    RasterImage gray = RasterImage::create(64, 64, 3);
    for (auto& p : gray.pixels) p = 128;
    RasterImage out = single_hop(gray, 100, Subsampling::S444);
    int max_err = 0;
    for (size_t i = 0; i < gray.pixels.size(); ++i)
        max_err = std::max(max_err, std::abs(int(out.pixels[i]) - int(gray.pixels[i])));
    CHECK(max_err <= 1);
}

TEST_CASE("dimensions and channels survive") {
    RasterImage img = value_noise_image(96, 64, 41);
    for (int q : {30, 80, 95}) {
        RasterImage out = single_hop(img, q);
        CHECK(out.width == img.width);
        CHECK(out.height == img.height);
        CHECK(out.channels == 3);
    }
}

TEST_CASE("monotone degradation over the quality sweep") {
    RasterImage img = value_noise_image(160, 128, 42);
    double prev = -1.0;
    for (int q : {95, 90, 80, 70, 60, 50}) {
        double mse = image_mse(img, single_hop(img, q));
        CHECK(mse >= prev); // non-increasing fidelity as quality drops
        prev = mse;
    }
}

TEST_CASE("double compression never improves fidelity") {
    RasterImage img = value_noise_image(96, 96, 43);
    ChannelConfig once;
    once.user_quality = 95;
    ChannelConfig twice = once;
    twice.sns_quality = 95;
    double psnr_once = image_psnr(img, transmit(img, once));
    double psnr_twice = image_psnr(img, transmit(img, twice));
    CHECK(psnr_twice <= psnr_once + 1e-12);
    CHECK(psnr_once > 35.0); // pinned: Q=95 stays visually clean on these images
}

TEST_CASE("decryption of JPEG ciphertext stays faithful") {
    RasterImage img = value_noise_image(160, 96, 44);
    SecretKey key = keygen(90);
    CipherConfig cfg = CipherConfig::for_type(PuzzleType::TypeINC, 32, 32);
    RasterImage enc = encrypt(img, key, cfg);
    RasterImage received = single_hop(enc, 95);
    RasterImage dec = decrypt(received, key, cfg);
    CHECK(image_psnr(img, dec) > 30.0);
}

TEST_CASE("encrypted-domain compressibility stays within 2x") {
    RasterImage img = value_noise_image(160, 128, 45);
    RasterImage enc = encrypt(img, keygen(91), CipherConfig::for_type(PuzzleType::TypeINC, 32, 32));
    size_t plain = encode_jpeg(img, 85, Subsampling::S420).size();
    size_t cipher = encode_jpeg(enc, 85, Subsampling::S420).size();
    CHECK(double(cipher) <= 2.0 * double(plain));
}

TEST_CASE("intermediate dumps are decodable JFIF") {
    RasterImage img = value_noise_image(64, 64, 46);
    ChannelConfig cfg;
    cfg.user_quality = 90;
    cfg.sns_quality = 85;
    cfg.keep_intermediates_prefix = "tmp_channel";
    RasterImage out = transmit(img, cfg);
    CHECK(out.width == img.width);
    for (const char* path : {"tmp_channel.user.jpg", "tmp_channel.sns.jpg"}) {
        FILE* fp = std::fopen(path, "rb");
        REQUIRE(fp != nullptr);
        std::fseek(fp, 0, SEEK_END);
        long n = std::ftell(fp);
        std::fseek(fp, 0, SEEK_SET);
        std::vector<uint8_t> bytes(static_cast<size_t>(n), 0);
        REQUIRE(std::fread(bytes.data(), 1, size_t(n), fp) == size_t(n));
        std::fclose(fp);
        CHECK(decode_jpeg(bytes).width == img.width);
        std::remove(path);
    }
}

TEST_CASE("bad quality rejected") {
    RasterImage img = test::random_image(32, 32, 47);
    CHECK_THROWS_AS(single_hop(img, 0), CodecError);
    CHECK_THROWS_AS(single_hop(img, 101), CodecError);
}

TEST_SUITE_END();
