#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "stringprime/primes.hpp"

using namespace stringprime;

namespace {

std::vector<std::uint64_t> collect(std::uint64_t limit, SieveConfig cfg = {}) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(limit, cfg)) out.push_back(p);
  return out;
}

std::vector<std::uint64_t> trial_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n)
    if (oracle::trial_division_prime(n)) out.push_back(n);
  return out;
}

std::filesystem::path fresh_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(PrimeStream, SmallLimits) {
  EXPECT_EQ(collect(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(collect(2), (std::vector<std::uint64_t>{2}));
  const auto thirty = collect(30);
  EXPECT_EQ(thirty, trial_primes(30));
  EXPECT_EQ(thirty.size(), 10u);
  EXPECT_EQ(thirty.back(), 29u);
}

TEST(PrimeStream, RejectsBadLimits) {
  EXPECT_THROW(primes_up_to(kSieveCeiling + 1), ResourceLimit);
  EXPECT_THROW(primes_up_to(1), DomainError);
  SieveConfig cfg;
  cfg.segment_log2 = 3;
  EXPECT_THROW(primes_up_to(100, cfg), InvalidInput);
}

TEST(PrimeStream, MatchesTrialDivisionAcrossSegments) {
  SieveConfig cfg;
  cfg.segment_log2 = 7;  // many tiny segments
  EXPECT_EQ(collect(20'000, cfg), trial_primes(20'000));
}

TEST(PrimeStream, StrictlyIncreasingAndIndependentOfConfig) {
  const auto ref = collect(3'000'000);
  for (std::size_t i = 1; i < ref.size(); ++i) ASSERT_LT(ref[i - 1], ref[i]);
  EXPECT_EQ(ref.size(), 216'816u);
  for (unsigned log2 : {10u, 16u, 20u})
    for (unsigned threads : {1u, 3u, 8u}) {
      SieveConfig cfg;
      cfg.segment_log2 = log2;
      cfg.threads = threads;
      EXPECT_EQ(collect(3'000'000, cfg), ref) << log2 << "/" << threads;
    }
}

TEST(SieveSegment, UnmarkedIffPrime) {
  const auto base_primes = odd_base_primes(isqrt(1u << 21));
  for (std::uint64_t base : {std::uint64_t{0}, std::uint64_t{1} << 12, std::uint64_t{1} << 20}) {
    const auto seg = SieveSegment::sieve(base, 1 << 12, base_primes);
    for (std::uint64_t n = base; n < base + (1 << 12); ++n)
      if (n > 2) { EXPECT_EQ(seg.is_prime(n), oracle::trial_division_prime(n)) << n; }
    EXPECT_THROW(seg.is_prime(base + (1 << 12)), DomainError);
  }
}

TEST(IsPrime, Examples) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(199));
  EXPECT_EQ(is_prime(199), oracle::trial_division_prime(199));
  EXPECT_EQ(is_prime(9810001), oracle::trial_division_prime(9810001));
  EXPECT_TRUE(is_prime(9810001));
}

TEST(IsPrime, HardCases64Bit) {
  EXPECT_TRUE(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_TRUE(is_prime(2305843009213693951ULL));   // 2^61 - 1
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
  EXPECT_FALSE(is_prime(561));                     // Carmichael
  EXPECT_FALSE(is_prime(3215031751ULL));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 23
  EXPECT_FALSE(is_prime(4294967297ULL));           // F5
  EXPECT_FALSE(is_prime(4294967291ULL * 4294967279ULL));
}

TEST(IsPrime, AgreesWithSieveBelowTenMillion) {
  const std::uint64_t limit = 10'000'000;
  std::vector<bool> sieved(limit + 1, false);
  for (auto p : primes_up_to(limit)) sieved[p] = true;
  for (std::uint64_t n = 0; n <= limit; ++n) ASSERT_EQ(is_prime(n), sieved[n]) << n;
}

TEST(PrimeCount, Examples) {
  EXPECT_EQ(prime_count(10), 4u);
  EXPECT_EQ(prime_count(100), trial_primes(100).size());
  EXPECT_EQ(prime_count(100), 25u);
  EXPECT_EQ(prime_count(17), trial_primes(17).size());
  EXPECT_EQ(prime_count(17), 7u);
  EXPECT_EQ(prime_count(1), 0u);
  EXPECT_EQ(prime_count(2), 1u);
  EXPECT_THROW(prime_count(0), DomainError);
  EXPECT_THROW(prime_count(kSieveCeiling + 1), ResourceLimit);
}

TEST(PrimeCount, AgreesWithTrialDivisionToOneHundredThousand) {
  SieveConfig cfg;
  cfg.segment_log2 = 9;
  std::uint64_t running = 0;
  for (std::uint64_t x = 1; x <= 100'000; ++x) {
    if (oracle::trial_division_prime(x)) ++running;
    // every x up to 2000, then a stride that still crosses many segment edges
    if (x <= 2000 || x % 97 == 0 || x % 512 <= 1) { ASSERT_EQ(prime_count(x, cfg), running) << x; }
  }
}

TEST(PrimeCount, KnownValues) {
  EXPECT_EQ(prime_count(1'000'000), 78'498u);
  EXPECT_EQ(prime_count(10'000'000), 664'579u);
  SieveConfig cfg;
  cfg.threads = 4;
  EXPECT_EQ(prime_count(100'000'000, cfg), 5'761'455u);
}

TEST(RosserLower, Values) {
  EXPECT_NEAR(rosser_lower(17), 17.0 / std::log(17.0), 1e-12);
  EXPECT_NEAR(rosser_lower(17), 6.0003, 1e-4);
  EXPECT_NEAR(rosser_lower(100), 21.715, 1e-3);
  EXPECT_THROW(rosser_lower(std::exp(2.0)), DomainError);
  EXPECT_THROW(rosser_lower(16.999), DomainError);
}

TEST(RosserLower, HoldsOnSieveRange) {
  std::uint64_t pi = 0;
  auto stream = primes_up_to(1'000'000);
  auto next = stream.next();
  for (std::uint64_t x = 2; x <= 1'000'000; ++x) {
    while (next && *next <= x) {
      ++pi;
      next = stream.next();
    }
    if (x >= 17) { ASSERT_GT(static_cast<double>(pi), rosser_lower(static_cast<double>(x))) << x; }
  }
}

TEST(SieveCache, ReusedAndEquivalent) {
  const auto dir = fresh_dir("stringprime_cache_reuse");
  SieveConfig cfg;
  cfg.cache_dir = dir;
  cfg.segment_log2 = 12;
  const auto expected = prime_count(500'000);
  EXPECT_EQ(prime_count(500'000, cfg), expected);
  const auto file = SieveCache::file_for(dir, 1 << 12);
  ASSERT_TRUE(std::filesystem::exists(file));
  const auto size = std::filesystem::file_size(file);
  EXPECT_EQ(prime_count(300'000, cfg), prime_count(300'000));  // served from the file
  EXPECT_EQ(std::filesystem::file_size(file), size);
  EXPECT_EQ(prime_count(900'000, cfg), prime_count(900'000));  // grows the file
  EXPECT_GT(std::filesystem::file_size(file), size);

  auto loaded = SieveCache::load(file, 1 << 12);
  ASSERT_TRUE(loaded);
  EXPECT_EQ(loaded->width, 1u << 12);
  EXPECT_GE(loaded->range_hi, 900'000u);
  std::filesystem::remove_all(dir);
}

TEST(SieveCache, CorruptFilesAreIgnored) {
  const auto dir = fresh_dir("stringprime_cache_corrupt");
  SieveConfig cfg;
  cfg.cache_dir = dir;
  cfg.segment_log2 = 12;
  ASSERT_EQ(prime_count(200'000, cfg), 17'984u);
  const auto file = SieveCache::file_for(dir, 1 << 12);

  // flip a payload byte: checksum must catch it
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40 + 100);
    f.put('\x55');
  }
  EXPECT_FALSE(SieveCache::load(file, 1 << 12));
  EXPECT_EQ(prime_count(200'000, cfg), 17'984u);

  // bad magic
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  EXPECT_FALSE(SieveCache::load(file, 1 << 12));
  EXPECT_EQ(prime_count(200'000, cfg), 17'984u);

  // truncated
  std::filesystem::resize_file(file, 30);
  EXPECT_FALSE(SieveCache::load(file, 1 << 12));
  EXPECT_EQ(prime_count(200'000, cfg), 17'984u);
  EXPECT_TRUE(SieveCache::load(file, 1 << 12));  // rewritten
  std::filesystem::remove_all(dir);
}
