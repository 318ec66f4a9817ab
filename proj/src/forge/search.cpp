#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "hypred/arith/primes.hpp"
#include "hypred/error.hpp"
#include "hypred/forge/forge.hpp"
#include "hypred/parallel.hpp"

namespace hypred::forge {

namespace {

constexpr int kCheckpointVersion = 1;
constexpr std::uint64_t kFilterPrimeLimit = 200;

// Residues x mod q at which some member vanishes mod q; such x survive only
// when that member equals q itself.
struct ResidueFilter {
  struct Table {
    std::uint64_t q;
    std::vector<std::vector<std::size_t>> vanishing;  // per residue, member indices
  };
  std::vector<Table> tables;

  explicit ResidueFilter(const Constellation& c) {
    for (std::uint64_t q : arith::primes_upto(kFilterPrimeLimit)) {
      Table t{q, std::vector<std::vector<std::size_t>>(q)};
      const Int qq = int_from_u64(q);
      for (std::uint64_t r = 0; r < q; ++r) {
        for (std::size_t i = 0; i < c.members.size(); ++i) {
          Int v = eval(c.members[i], int_from_u64(r)) % qq;
          if (v == 0) t.vanishing[r].push_back(i);
        }
      }
      tables.push_back(std::move(t));
    }
  }

  bool passes(const Constellation& c, std::uint64_t x) const {
    for (const Table& t : tables) {
      for (std::size_t i : t.vanishing[x % t.q]) {
        Int v = eval(c.members[i], int_from_u64(x));
        if (abs(v) != int_from_u64(t.q)) return false;
      }
    }
    return true;
  }
};

std::string checkpoint_kind(const Constellation& c) {
  std::string k(to_string(c.kind));
  if (c.kind == FamilyKind::Genus5 && c.mode == Mode::PaperExact) k += "-paper-exact";
  return k;
}

struct Checkpoint {
  std::uint64_t scanned_upto = 0;
  std::vector<Int> witnesses;
};

Checkpoint read_checkpoint(const std::filesystem::path& path, const Constellation& c) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Checkpoint, "cannot read checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error(Errc::Checkpoint, "unsupported checkpoint version");
    }
    if (j.at("kind").get<std::string>() != checkpoint_kind(c) || j.at("g").get<int>() != c.g ||
        j.at("alpha").get<std::string>() != c.alpha.get_str()) {
      throw Error(Errc::Checkpoint, "checkpoint belongs to a different search");
    }
    Checkpoint cp;
    cp.scanned_upto = j.at("scanned_upto").get<std::uint64_t>();
    for (const auto& w : j.at("witnesses")) cp.witnesses.push_back(parse_int(w.get<std::string>()));
    return cp;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Checkpoint, std::string("malformed checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::Checkpoint) throw;
    throw Error(Errc::Checkpoint, std::string("malformed checkpoint: ") + e.what());
  }
}

void write_checkpoint(const std::filesystem::path& path, const Constellation& c, const Checkpoint& cp) {
  nlohmann::ordered_json j;
  j["kind"] = checkpoint_kind(c);
  j["g"] = c.g;
  j["alpha"] = c.alpha.get_str();
  j["scanned_upto"] = cp.scanned_upto;
  j["witnesses"] = nlohmann::ordered_json::array();
  for (const Int& w : cp.witnesses) j["witnesses"].push_back(w.get_str());
  j["version"] = kCheckpointVersion;
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::Checkpoint, "cannot write checkpoint " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out.flush()) throw Error(Errc::Checkpoint, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::Checkpoint, "cannot replace checkpoint: " + ec.message());
}

}  // namespace

SearchResult search(const Constellation& c, const SearchOptions& opt) {
  if (opt.block_size == 0) throw Error(Errc::InvalidArgument, "block size must be positive");
  SearchResult result;
  std::uint64_t start = 1;
  if (opt.checkpoint && std::filesystem::exists(*opt.checkpoint)) {
    const Checkpoint cp = read_checkpoint(*opt.checkpoint, c);
    if (!cp.witnesses.empty()) {
      const Int& w = cp.witnesses.front();
      if (w <= int_from_u64(opt.limit)) {
        result.witness = w;
        result.scanned_upto = to_u64(w);
        return result;
      }
      // the witness lies beyond this limit, so nothing below the limit qualifies
      result.scanned_upto = opt.limit;
      return result;
    }
    start = cp.scanned_upto + 1;
  }
  if (start > opt.limit) {
    result.scanned_upto = std::max(opt.limit, start - 1);
    return result;
  }

  const ResidueFilter filter(c);
  const unsigned workers = std::max(1u, opt.workers == 0 ? default_workers() : opt.workers);
  std::uint64_t blocks = 0;
  while (start <= opt.limit) {
    if (opt.max_blocks && blocks == *opt.max_blocks) {
      result.finished = false;
      result.scanned_upto = start - 1;
      return result;
    }
    const std::uint64_t hi = opt.limit - start < opt.block_size ? opt.limit : start + opt.block_size - 1;
    const std::vector<std::uint64_t> primes = arith::primes_in_range(start, hi + 1);
    std::vector<std::optional<std::uint64_t>> found(workers);
    run_workers(workers, [&](unsigned w) {
      const Slice s = slice_for(primes.size(), w, workers);
      for (std::size_t i = s.begin; i < s.end; ++i) {
        const std::uint64_t x = primes[i];
        if (filter.passes(c, x) && c.holds(int_from_u64(x))) {
          found[w] = x;
          return;
        }
      }
    });
    std::optional<std::uint64_t> best;
    for (const auto& f : found) {
      if (f && (!best || *f < *best)) best = f;
    }
    ++blocks;
    Checkpoint cp;
    if (best) {
      cp.scanned_upto = *best;
      cp.witnesses.push_back(int_from_u64(*best));
    } else {
      cp.scanned_upto = hi;
    }
    if (opt.checkpoint) write_checkpoint(*opt.checkpoint, c, cp);
    if (best) {
      result.witness = int_from_u64(*best);
      result.scanned_upto = *best;
      return result;
    }
    start = hi + 1;
  }
  result.scanned_upto = opt.limit;
  return result;
}

}  // namespace hypred::forge
