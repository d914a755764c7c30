#pragma once

// Prime enumeration by a segmented, odd-only sieve of Eratosthenes, plus a
// deterministic 64-bit Miller-Rabin test for spot checks.
//
// Segment layout: a segment covers [base, base + width) with width a power
// of two and base a multiple of width. Bit i stands for the odd number
// base + 2i + 1; a set bit marks it composite (or 1).

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "stringprime/error.hpp"

namespace stringprime {

inline constexpr std::uint64_t kSieveCeiling = 1'000'000'000ULL;

struct SieveConfig {
  unsigned segment_log2 = 18;  // 256 Ki numbers, 16 KiB of marks
  unsigned threads = 1;
  std::filesystem::path cache_dir{};  // empty: in-memory only
  std::ostream* diagnostics = &std::cerr;  // cache warnings

  std::uint64_t segment_width() const { return std::uint64_t{1} << segment_log2; }
};

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Odd primes up to limit, by a plain sieve. Used to seed the segments.
inline std::vector<std::uint32_t> odd_base_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 3) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 3; i * i <= limit; i += 2)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += 2 * i) composite[j] = true;
  for (std::uint64_t i = 3; i <= limit; i += 2)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

class SieveSegment {
 public:
  SieveSegment(std::uint64_t base, std::uint64_t width, std::vector<std::uint64_t> marks)
      : base_(base), width_(width), marks_(std::move(marks)) {}

  // Sieves [base, base + width) with odd base primes covering sqrt(base + width).
  static SieveSegment sieve(std::uint64_t base, std::uint64_t width,
                            std::span<const std::uint32_t> base_primes) {
    std::vector<std::uint64_t> marks(words_for(width), 0);
    const std::uint64_t end = base + width;
    for (std::uint64_t p : base_primes) {
      if (p * p >= end) break;
      std::uint64_t m = (base + p - 1) / p * p;
      if (m % 2 == 0) m += p;
      if (m < p * p) m = p * p;
      for (std::uint64_t i = (m - base - 1) / 2; i < width / 2; i += p)
        marks[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    if (base == 0) marks[0] |= 1;  // 1 is not prime
    return SieveSegment(base, width, std::move(marks));
  }

  static std::size_t words_for(std::uint64_t width) { return static_cast<std::size_t>(width / 128); }

  std::uint64_t base() const noexcept { return base_; }
  std::uint64_t width() const noexcept { return width_; }
  std::span<const std::uint64_t> marks() const noexcept { return marks_; }

  bool is_prime(std::uint64_t n) const {
    if (n < base_ || n >= base_ + width_) throw DomainError("value outside sieve segment");
    if (n == 2) return true;
    if (n % 2 == 0) return false;
    const std::uint64_t i = (n - base_ - 1) / 2;
    return ((marks_[i >> 6] >> (i & 63)) & 1) == 0;
  }

  // Calls fn(p) for every prime p <= last in this segment, ascending.
  template <typename Fn>
  void for_each_prime(std::uint64_t last, Fn&& fn) const {
    if (base_ == 0 && last >= 2) fn(std::uint64_t{2});
    for (std::size_t w = 0; w < marks_.size(); ++w) {
      std::uint64_t bits = ~marks_[w];
      while (bits != 0) {
        const auto b = static_cast<unsigned>(std::countr_zero(bits));
        const std::uint64_t n = base_ + 2 * ((static_cast<std::uint64_t>(w) << 6) + b) + 1;
        if (n > last) return;
        fn(n);
        bits &= bits - 1;
      }
    }
  }

  std::uint64_t count_primes(std::uint64_t last) const {
    if (last < base_) return 0;
    std::uint64_t count = (base_ == 0 && last >= 2) ? 1 : 0;
    if (last < base_ + 1) return count;
    // odd residents <= last have bit index < bound
    std::uint64_t bound = (std::min(last, base_ + width_ - 1) - base_ - 1) / 2 + 1;
    for (std::size_t w = 0; w < marks_.size() && bound > 0; ++w) {
      std::uint64_t bits = ~marks_[w];
      if (bound < 64) bits &= (std::uint64_t{1} << bound) - 1;
      count += static_cast<std::uint64_t>(std::popcount(bits));
      bound = bound > 64 ? bound - 64 : 0;
    }
    return count;
  }

 private:
  std::uint64_t base_;
  std::uint64_t width_;
  std::vector<std::uint64_t> marks_;
};

// On-disk cache of sieved marks for [0, range_hi).
//
// Layout (native endianness):
//   "SPSV" | u32 version | u64 segment width | u64 range_lo | u64 range_hi
//   | u64 FNV-1a of payload | payload words
// A file that fails any header check is ignored and the range is re-sieved.
class SieveCache {
 public:
  static constexpr char kMagic[4] = {'S', 'P', 'S', 'V'};
  static constexpr std::uint32_t kVersion = 1;

  struct Contents {
    std::uint64_t width = 0;
    std::uint64_t range_hi = 0;
    std::vector<std::uint64_t> words;
  };

  static std::filesystem::path file_for(const std::filesystem::path& dir, std::uint64_t width) {
    return dir / ("sieve-w" + std::to_string(width) + ".spsv");
  }

  static std::uint64_t checksum(std::span<const std::uint64_t> words) {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words)
      for (int i = 0; i < 8; ++i) {
        h ^= (w >> (8 * i)) & 0xff;
        h *= 1099511628211ULL;
      }
    return h;
  }

  // nullopt when absent or corrupt; corruption is reported on stderr.
  static std::optional<Contents> load(const std::filesystem::path& path, std::uint64_t width,
                                      std::ostream& diag = std::cerr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    std::uint32_t version = 0;
    std::uint64_t w = 0, lo = 0, hi = 0, sum = 0;
    in.read(magic, 4);
    read_pod(in, version);
    read_pod(in, w);
    read_pod(in, lo);
    read_pod(in, hi);
    read_pod(in, sum);
    auto reject = [&](const char* why) -> std::optional<Contents> {
      diag << "warning: ignoring sieve cache " << path.string() << ": " << why << '\n';
      return std::nullopt;
    };
    if (!in || std::memcmp(magic, kMagic, 4) != 0) return reject("bad magic");
    if (version != kVersion) return reject("unsupported version");
    if (w != width) return std::nullopt;  // different configuration, not corruption
    if (lo != 0 || hi % width != 0 || hi > 2 * kSieveCeiling) return reject("bad range");
    Contents c{w, hi, std::vector<std::uint64_t>(static_cast<std::size_t>(hi / 128))};
    in.read(reinterpret_cast<char*>(c.words.data()),
            static_cast<std::streamsize>(c.words.size() * sizeof(std::uint64_t)));
    if (!in || in.peek() != std::char_traits<char>::eof()) return reject("truncated payload");
    if (checksum(c.words) != sum) return reject("checksum mismatch");
    return c;
  }

  // Writes to a temporary file then renames it into place.
  static void store(const std::filesystem::path& path, const Contents& c, std::ostream& diag = std::cerr) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&c));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        diag << "warning: cannot write sieve cache " << tmp.string() << '\n';
        return;
      }
      const std::uint64_t lo = 0, sum = checksum(c.words);
      out.write(kMagic, 4);
      write_pod(out, kVersion);
      write_pod(out, c.width);
      write_pod(out, lo);
      write_pod(out, c.range_hi);
      write_pod(out, sum);
      out.write(reinterpret_cast<const char*>(c.words.data()),
                static_cast<std::streamsize>(c.words.size() * sizeof(std::uint64_t)));
      if (!out) {
        std::filesystem::remove(tmp, ec);
        return;
      }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  template <typename T>
  static void read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
  }
  template <typename T>
  static void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
};

namespace detail {

inline void check_limit(std::uint64_t limit) {
  if (limit > kSieveCeiling)
    throw ResourceLimit("sieve limit " + std::to_string(limit) + " exceeds ceiling " +
                        std::to_string(kSieveCeiling));
}

inline void check_config(const SieveConfig& cfg) {
  if (cfg.segment_log2 < 7 || cfg.segment_log2 > 30)
    throw InvalidInput("segment_log2 must be in 7..30");
}

}  // namespace detail

// Visits sieve segments covering [0, limit] in ascending order.
//
// map(const SieveSegment&, std::uint64_t last) runs on up to cfg.threads
// workers; reduce(result) runs on the calling thread strictly in segment
// order and returns false to stop early. Results therefore do not depend on
// the worker count.
template <typename Map, typename Reduce>
void sweep_segments(std::uint64_t limit, const SieveConfig& cfg, Map&& map, Reduce&& reduce) {
  detail::check_limit(limit);
  detail::check_config(cfg);
  const std::uint64_t width = cfg.segment_width();
  const std::uint64_t nseg = limit / width + 1;
  const std::uint64_t covered = nseg * width;
  const auto base_primes = odd_base_primes(isqrt(covered - 1));

  std::optional<SieveCache::Contents> cache;
  if (!cfg.cache_dir.empty()) {
    const auto path = SieveCache::file_for(cfg.cache_dir, width);
    std::ostream& diag = cfg.diagnostics ? *cfg.diagnostics : std::cerr;
    cache = SieveCache::load(path, width, diag);
    if (!cache || cache->range_hi < covered) {
      SieveCache::Contents fresh{width, covered, {}};
      fresh.words.reserve(static_cast<std::size_t>(covered / 128));
      for (std::uint64_t s = 0; s < nseg; ++s) {
        auto seg = SieveSegment::sieve(s * width, width, base_primes);
        fresh.words.insert(fresh.words.end(), seg.marks().begin(), seg.marks().end());
      }
      SieveCache::store(path, fresh, diag);
      cache = std::move(fresh);
    }
  }

  auto make_segment = [&](std::uint64_t s) {
    if (cache) {
      const std::size_t per = SieveSegment::words_for(width);
      auto first = cache->words.begin() + static_cast<std::ptrdiff_t>(s * per);
      return SieveSegment(s * width, width, std::vector<std::uint64_t>(first, first + static_cast<std::ptrdiff_t>(per)));
    }
    return SieveSegment::sieve(s * width, width, base_primes);
  };
  auto work = [&](std::uint64_t s) {
    const auto seg = make_segment(s);
    return map(seg, std::min(limit, seg.base() + width - 1));
  };

  const unsigned threads = cfg.threads == 0 ? 1 : cfg.threads;
  if (threads == 1) {
    for (std::uint64_t s = 0; s < nseg; ++s)
      if (!reduce(work(s))) return;
    return;
  }
  using Result = decltype(work(0));
  for (std::uint64_t s = 0; s < nseg; s += threads) {
    const std::uint64_t n = std::min<std::uint64_t>(threads, nseg - s);
    std::vector<std::future<Result>> pending;
    for (std::uint64_t j = 1; j < n; ++j)
      pending.push_back(std::async(std::launch::async, work, s + j));
    Result head = work(s);
    bool go = reduce(std::move(head));
    for (auto& f : pending) {
      Result r = f.get();
      if (go) go = reduce(std::move(r));
    }
    if (!go) return;
  }
}

// Ascending primes in [2, limit], one segment buffered at a time.
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t limit, SieveConfig cfg = {})
      : limit_(limit), cfg_(std::move(cfg)) {
    detail::check_limit(limit_);
    detail::check_config(cfg_);
    if (limit_ < 2) throw DomainError("prime stream limit must be at least 2");
    base_primes_ = odd_base_primes(isqrt(limit_));
  }

  std::uint64_t limit() const noexcept { return limit_; }

  std::optional<std::uint64_t> next() {
    while (pos_ == buffer_.size()) {
      if (next_base_ > limit_) return std::nullopt;
      refill();
    }
    return buffer_[pos_++];
  }

  class iterator {
   public:
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(PrimeStream* s) : stream_(s) { ++*this; }
    std::uint64_t operator*() const { return current_; }
    iterator& operator++() {
      auto v = stream_->next();
      if (v) current_ = *v;
      else stream_ = nullptr;
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.stream_ == nullptr; }

   private:
    PrimeStream* stream_ = nullptr;
    std::uint64_t current_ = 0;
  };

  iterator begin() { return iterator(this); }
  std::default_sentinel_t end() { return {}; }

 private:
  void refill() {
    buffer_.clear();
    pos_ = 0;
    const std::uint64_t width = cfg_.segment_width();
    const unsigned batch = cfg_.threads == 0 ? 1 : cfg_.threads;
    std::vector<std::future<std::vector<std::uint64_t>>> pending;
    auto job = [this, width](std::uint64_t base) {
      std::vector<std::uint64_t> out;
      SieveSegment::sieve(base, width, base_primes_)
          .for_each_prime(std::min(limit_, base + width - 1), [&](std::uint64_t p) { out.push_back(p); });
      return out;
    };
    for (unsigned j = 0; j < batch && next_base_ <= limit_; ++j, next_base_ += width)
      pending.push_back(std::async(batch == 1 ? std::launch::deferred : std::launch::async, job, next_base_));
    for (auto& f : pending) {
      auto part = f.get();
      buffer_.insert(buffer_.end(), part.begin(), part.end());
    }
  }

  std::uint64_t limit_;
  SieveConfig cfg_;
  std::vector<std::uint32_t> base_primes_;
  std::vector<std::uint64_t> buffer_;
  std::size_t pos_ = 0;
  std::uint64_t next_base_ = 0;
};

inline PrimeStream primes_up_to(std::uint64_t limit, SieveConfig cfg = {}) {
  return PrimeStream(limit, std::move(cfg));
}

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// Deterministic for all 64-bit n: the first twelve primes as Miller-Rabin
// witnesses suffice below 3.3e24.
inline bool is_prime(std::uint64_t n) {
  constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kWitnesses) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// pi(x), exact.
inline std::uint64_t prime_count(std::uint64_t x, const SieveConfig& cfg = {}) {
  if (x == 0) throw DomainError("prime_count requires x >= 1");
  std::uint64_t total = 0;
  sweep_segments(
      x, cfg, [](const SieveSegment& seg, std::uint64_t last) { return seg.count_primes(last); },
      [&](std::uint64_t c) {
        total += c;
        return true;
      });
  return total;
}

// Lower estimate x / log x for pi(x), valid for x >= 17.
inline double rosser_lower(double x) {
  if (!(x >= 17.0)) throw DomainError("rosser_lower requires x >= 17");
  return x / std::log(x);
}

}  // namespace stringprime
