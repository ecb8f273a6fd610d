#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "formalat/config.hpp"
#include "formalat/error.hpp"
#include "formalat/group_io.hpp"
#include "formalat/perm_group.hpp"

namespace formalat {

// ---------------------------------------------------------------------------
// Standard families as permutation groups

namespace families {

inline Perm from_map(std::size_t degree, auto&& f) {
  std::vector<std::uint32_t> images(degree);
  for (std::uint32_t i = 0; i < degree; ++i) images[i] = static_cast<std::uint32_t>(f(i)) + 1;
  return Perm::from_images(images);
}

/// n-cycle on n points.
inline PermGroup cyclic(std::size_t n) {
  if (n == 0) throw DomainError("cyclic(0)");
  std::vector<Perm> gens;
  if (n > 1) gens.push_back(from_map(n, [n](std::uint32_t i) { return (i + 1) % n; }));
  return PermGroup(n, std::move(gens));
}

/// Dihedral group of the given order (>= 6) on order/2 points.
inline PermGroup dihedral(std::size_t order) {
  if (order < 6 || order % 2 != 0) throw DomainError("dihedral order must be even and >= 6");
  const std::size_t n = order / 2;
  return PermGroup(n, {from_map(n, [n](std::uint32_t i) { return (i + 1) % n; }),
                       from_map(n, [n](std::uint32_t i) { return (n - i) % n; })});
}

inline PermGroup symmetric(std::size_t n) {
  if (n == 0) throw DomainError("symmetric(0)");
  if (n == 1) return PermGroup(1, {});
  if (n == 2) return PermGroup(2, {Perm::from_cycles(2, "(1 2)")});
  return PermGroup(n, {Perm::from_cycles(n, "(1 2)"), from_map(n, [n](std::uint32_t i) { return (i + 1) % n; })});
}

inline PermGroup alternating(std::size_t n) {
  if (n == 0) throw DomainError("alternating(0)");
  std::vector<Perm> gens;
  for (std::size_t k = 3; k <= n; ++k) {
    gens.push_back(Perm::from_cycles(n, "(1 2 " + std::to_string(k) + ")"));
  }
  return PermGroup(n, std::move(gens));
}

/// C_p^k as k disjoint p-cycles.
inline PermGroup elementary_abelian(std::size_t p, std::size_t k) {
  if (p < 2 || k == 0) throw DomainError("elementary_abelian needs p >= 2, k >= 1");
  const std::size_t degree = p * k;
  std::vector<Perm> gens;
  for (std::size_t b = 0; b < k; ++b) {
    gens.push_back(from_map(degree, [p, b](std::uint32_t i) {
      const std::size_t block = i / p;
      return block == b ? block * p + (i % p + 1) % p : i;
    }));
  }
  return PermGroup(degree, std::move(gens));
}

/// Dicyclic group <a, x | a^{2n}, x^2 = a^n, a^x = a^-1> of order 4n, in its
/// right regular representation.
inline PermGroup dicyclic(std::size_t order) {
  if (order < 8 || order % 4 != 0) throw DomainError("dicyclic order must be a multiple of 4 and >= 8");
  const std::size_t n = order / 4;
  const std::size_t m = 2 * n;
  // element a^i x^e  <->  point e*m + i
  auto product = [m, n](std::size_t u, std::size_t v) {
    const std::size_t i = u % m, e = u / m, j = v % m, f = v / m;
    std::size_t k = e ? (i + m - j) % m : (i + j) % m;
    if (e && f) k = (k + n) % m;
    return ((e ^ f) * m) + k;
  };
  return PermGroup(order, {from_map(order, [&](std::uint32_t u) { return product(u, 1); }),
                           from_map(order, [&](std::uint32_t u) { return product(u, m); })});
}

/// A × B on disjoint point sets.
inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  const std::size_t da = a.degree(), db = b.degree();
  std::vector<Perm> gens;
  for (const Perm& g : a.generators()) {
    gens.push_back(from_map(da + db, [&](std::uint32_t i) { return i < da ? g.image0(i) : i; }));
  }
  for (const Perm& g : b.generators()) {
    gens.push_back(from_map(da + db, [&](std::uint32_t i) { return i < da ? i : da + g.image0(i - da); }));
  }
  return PermGroup(da + db, std::move(gens));
}

/// C_p ⋊ C_q acting on Z_p by x -> x + 1 and x -> r x, r of order q mod p.
inline PermGroup affine(std::size_t p, std::size_t q) {
  if ((p - 1) % q != 0) throw DomainError("q must divide p - 1");
  std::size_t r = 0;
  for (std::size_t c = 2; c < p && r == 0; ++c) {
    std::size_t x = 1, k = 0;
    do {
      x = x * c % p;
      ++k;
    } while (x != 1);
    if (k == q) r = c;
  }
  if (r == 0) throw DomainError("no element of order q mod p");
  return PermGroup(p, {from_map(p, [p](std::uint32_t i) { return (i + 1) % p; }),
                       from_map(p, [p, r](std::uint32_t i) { return (i * r) % p; })});
}

/// F_p^2 ⋊ <M> on p^2 points, M = [[0, -1], [1, -1]] (order 3, fixed-point free
/// on nonzero vectors when p ≡ 2 mod 3).
inline PermGroup vector_space_by_order3(std::size_t p) {
  const std::size_t n = p * p;
  auto enc = [p](std::size_t x, std::size_t y) { return x * p + y; };
  return PermGroup(n, {from_map(n, [&](std::uint32_t v) { return enc((v / p + 1) % p, v % p); }),
                       from_map(n, [&](std::uint32_t v) { return enc(v / p, (v % p + 1) % p); }),
                       from_map(n, [&](std::uint32_t v) {
                         const std::size_t x = v / p, y = v % p;
                         // (x, y) -> (-y, x - y)
                         return enc((p - y) % p, (x + p - y) % p);
                       })});
}

/// F_8 ⋊ F_8^* (order 56) on the 8 field elements, F_8 = F_2[t]/(t^3 + t + 1).
inline PermGroup f8_by_c7() {
  auto times_t = [](std::uint32_t v) {
    std::uint32_t w = v << 1;
    if (w & 8u) w ^= 0b1011u;
    return w;
  };
  return PermGroup(8, {from_map(8, [](std::uint32_t v) { return v ^ 1u; }),
                       from_map(8, [&](std::uint32_t v) { return times_t(v); })});
}

/// SL(2,3) acting on the 8 nonzero vectors of F_3^2.
inline PermGroup sl23() {
  std::vector<std::pair<int, int>> vecs;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x || y) vecs.emplace_back(x, y);
    }
  }
  auto index_of = [&](int x, int y) {
    return static_cast<std::uint32_t>(std::find(vecs.begin(), vecs.end(), std::make_pair(x % 3, y % 3)) -
                                      vecs.begin());
  };
  // row vectors times [[1,1],[0,1]] and [[1,0],[1,1]]
  return PermGroup(8, {from_map(8, [&](std::uint32_t i) { return index_of(vecs[i].first, vecs[i].first + vecs[i].second); }),
                       from_map(8, [&](std::uint32_t i) { return index_of(vecs[i].first + vecs[i].second, vecs[i].second); })});
}

/// <P, (c, z)> where P ⋊ <c> is the base group on the first `base_degree`
/// points and z is a cycle of length `cycle` on fresh points: a cyclic
/// extension whose complement has order `cycle`.
inline PermGroup cyclic_extension(const std::vector<Perm>& normal_gens, const Perm& acting, std::size_t cycle) {
  const std::size_t d = acting.degree();
  const std::size_t degree = d + cycle;
  std::vector<Perm> gens;
  for (const Perm& g : normal_gens) {
    gens.push_back(from_map(degree, [&](std::uint32_t i) { return i < d ? g.image0(i) : i; }));
  }
  gens.push_back(from_map(degree, [&](std::uint32_t i) {
    return i < d ? acting.image0(i) : d + (i - d + 1) % cycle;
  }));
  return PermGroup(degree, std::move(gens));
}

}  // namespace families

// ---------------------------------------------------------------------------
// Corpus

struct CorpusEntry {
  std::string id;
  std::string description;
  PermGroup group;
};

/// Default corpus: cyclic n ≤ 32, dihedral orders ≤ 48, S_3..S_5, A_4..A_6,
/// elementary abelian p^k ≤ 32, dicyclic orders ≤ 48, Schmidt examples and
/// mixed direct products up to order 120.
inline std::vector<CorpusEntry> builtin_corpus() {
  using namespace families;
  std::vector<CorpusEntry> out;
  auto pad = [](std::size_t n, int width) {
    std::string s = std::to_string(n);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
  };
  for (std::size_t n = 1; n <= 32; ++n) out.push_back({"C" + pad(n, 2), "cyclic of order " + std::to_string(n), cyclic(n)});
  for (std::size_t o = 6; o <= 48; o += 2) out.push_back({"D" + pad(o, 2), "dihedral of order " + std::to_string(o), dihedral(o)});
  for (std::size_t n = 3; n <= 5; ++n) out.push_back({"S" + std::to_string(n), "symmetric on " + std::to_string(n) + " points", symmetric(n)});
  for (std::size_t n = 4; n <= 6; ++n) out.push_back({"A" + std::to_string(n), "alternating on " + std::to_string(n) + " points", alternating(n)});
  const std::array<std::pair<std::size_t, std::size_t>, 7> elem{{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}}};
  for (auto [p, k] : elem) {
    out.push_back({"E" + std::to_string(p) + "^" + std::to_string(k),
                   "elementary abelian of order " + std::to_string(p) + "^" + std::to_string(k), elementary_abelian(p, k)});
  }
  for (std::size_t o = 8; o <= 48; o += 4) {
    out.push_back({o == 8 ? std::string("Q8") : "Dic" + pad(o, 2), "dicyclic of order " + std::to_string(o), dicyclic(o)});
  }
  out.push_back({"SL2_3", "SL(2,3) on nonzero vectors of F_3^2", sl23()});
  out.push_back({"C7xC3", "C7 semidirect C3 (order 21)", affine(7, 3)});
  out.push_back({"C13xC3", "C13 semidirect C3 (order 39)", affine(13, 3)});
  out.push_back({"C5^2xC3", "C5^2 semidirect C3 (order 75)", vector_space_by_order3(5)});
  out.push_back({"C2^3xC7", "C2^3 semidirect C7 (order 56)", f8_by_c7()});
  out.push_back({"C2^2xC9", "C2^2 semidirect C9 (order 36)",
                 cyclic_extension({Perm::from_cycles(4, "(1 2)(3 4)"), Perm::from_cycles(4, "(1 3)(2 4)")},
                                  Perm::from_cycles(4, "(2 3 4)"), 9)});
  out.push_back({"C3xC8", "C3 semidirect C8 (order 24)",
                 cyclic_extension({Perm::from_cycles(3, "(1 2 3)")}, Perm::from_cycles(3, "(1 2)"), 8)});
  out.push_back({"C5xC4", "Frobenius group C5 semidirect C4 (order 20)", affine(5, 4)});

  const std::array<std::tuple<const char*, PermGroup, PermGroup>, 12> products{{
      {"S3xC3", symmetric(3), cyclic(3)},
      {"S3xC4", symmetric(3), cyclic(4)},
      {"S3xC5", symmetric(3), cyclic(5)},
      {"S3xS3", symmetric(3), symmetric(3)},
      {"A4xC2", alternating(4), cyclic(2)},
      {"A4xC3", alternating(4), cyclic(3)},
      {"D08xC3", dihedral(8), cyclic(3)},
      {"Q8xC2", dicyclic(8), cyclic(2)},
      {"Q8xC3", dicyclic(8), cyclic(3)},
      {"S4xC2", symmetric(4), cyclic(2)},
      {"C7xC3xC2", affine(7, 3), cyclic(2)},
      {"A5xC2", alternating(5), cyclic(2)},
  }};
  for (const auto& [id, a, b] : products) {
    out.push_back({id, "direct product", direct_product(a, b)});
  }
  return out;
}

inline std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline std::string corpus_file_text(const CorpusEntry& e) { return format_group(e.group, e.id + ": " + e.description); }

struct ManifestLine {
  std::string id;
  std::size_t degree = 0;
  std::uint64_t order = 0;
  std::string sha256;
  bool skipped_cap = false;
};

inline std::string format_manifest(const std::vector<ManifestLine>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l.id + '\t' + std::to_string(l.degree) + '\t' + std::to_string(l.order) + '\t' + l.sha256;
    if (l.skipped_cap) out += "\tSKIPPED_CAP";
    out += '\n';
  }
  return out;
}

inline ManifestLine manifest_line(const CorpusEntry& e, const Caps& caps = Caps{}) {
  return ManifestLine{e.id, e.group.degree(), e.group.order(), sha256_hex(corpus_file_text(e)),
                      e.group.order() > caps.table || e.group.order() > caps.elements};
}

/// Writes `<id>.grp` per entry plus `manifest.tsv` (sorted by id); returns
/// the manifest text.
inline std::string write_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& dir,
                                const Caps& caps = Caps{}) {
  std::filesystem::create_directories(dir);
  std::vector<ManifestLine> lines;
  for (const auto& e : corpus) {
    std::ofstream out(dir / (e.id + ".grp"), std::ios::binary);
    out << corpus_file_text(e);
    if (!out) throw Error("cannot write " + (dir / (e.id + ".grp")).string());
    lines.push_back(manifest_line(e, caps));
  }
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  const std::string manifest = format_manifest(lines);
  std::ofstream out(dir / "manifest.tsv", std::ios::binary);
  out << manifest;
  return manifest;
}

struct LoadedCorpus {
  std::vector<CorpusEntry> entries;
  std::vector<std::pair<std::string, std::string>> errors;  // file, message
  std::vector<ManifestLine> manifest;
};

/// Loads every `*.grp` file in `dir`, sorted by stem; group id = file stem.
/// Parse errors are collected per file.
inline LoadedCorpus load_corpus(const std::filesystem::path& dir, const Caps& caps = Caps{}) {
  LoadedCorpus out;
  if (!std::filesystem::is_directory(dir)) throw Error("corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".grp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.stem() < b.stem(); });
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
      CorpusEntry e{path.stem().string(), "", parse_group(text)};
      out.manifest.push_back(ManifestLine{e.id, e.group.degree(), e.group.order(), sha256_hex(text),
                                         e.group.order() > caps.table || e.group.order() > caps.elements});
      out.entries.push_back(std::move(e));
    } catch (const Error& err) {
      out.errors.emplace_back(path.filename().string(), err.what());
    }
  }
  return out;
}

}  // namespace formalat
