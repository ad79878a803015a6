#include <fstream>
#include <map>
#include <sstream>

#include "piltz/divisor_core.hpp"
#include "piltz/errors.hpp"
#include "piltz/verifier.hpp"

namespace piltz {

namespace {

constexpr const char* kMagic = "PDLV1";

CheckpointError corrupt(const std::string& path, std::size_t line, const std::string& what) {
  return CheckpointError(CheckpointError::Kind::Corrupt,
                         path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void checkpoint_write_header(const std::string& path, const std::string& hash) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CheckpointError(CheckpointError::Kind::Io, "cannot write " + path);
  out << kMagic << ' ' << hash << '\n';
  out.flush();
  if (!out) throw CheckpointError(CheckpointError::Kind::Io, "write failed: " + path);
}

void checkpoint_append(const std::string& path, const BlockResult& block) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw CheckpointError(CheckpointError::Kind::Io, "cannot append to " + path);
  // Blocks with undecided points are left for a later run.
  if (block.undecided_count > 0) return;
  out << block.checkpoint_line() << '\n';
  out.flush();
  if (!out) throw CheckpointError(CheckpointError::Kind::Io, "write failed: " + path);
}

Checkpoint checkpoint_resume(const std::string& path, const VerificationConfig& config) {
  std::ifstream in(path);
  if (!in) throw CheckpointError(CheckpointError::Kind::Io, "cannot read " + path);
  Checkpoint cp;
  std::string line;
  if (!std::getline(in, line)) throw corrupt(path, 1, "missing header");
  {
    std::istringstream head(line);
    std::string magic;
    if (!(head >> magic >> cp.hash) || magic != kMagic) throw corrupt(path, 1, "bad header");
  }
  const std::string expected = config_hash(config);
  if (cp.hash != expected) {
    throw CheckpointError(CheckpointError::Kind::ConfigHashMismatch,
                          "checkpoint " + path + " belongs to configuration " + cp.hash + ", not " + expected);
  }

  const std::uint64_t total = (config.x_hi - config.x_lo) / config.block_size + 1;
  std::map<std::uint64_t, BlockResult> latest;  // last line per block wins
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream s(line);
    BlockResult b;
    std::string t, side, extra;
    if (!(s >> b.block_index >> b.x_start >> b.x_end >> t >> b.max_ratio >> b.argmax >> side >> b.violation_count) ||
        (s >> extra)) {
      // A torn final line from an interrupted write is dropped.
      if (in.eof()) break;
      throw corrupt(path, lineno, "malformed block line");
    }
    try {
      b.t_k_at_end = parse_u128(t);
      MpReal::from_string(b.max_ratio);
    } catch (const Error&) {
      throw corrupt(path, lineno, "malformed number");
    }
    if (side == "at") {
      b.side = Side::at_point;
    } else if (side == "left") {
      b.side = Side::left_limit;
    } else {
      throw corrupt(path, lineno, "unknown side '" + side + "'");
    }
    const std::uint64_t start = config.x_lo + b.block_index * config.block_size;
    if (b.block_index >= total || b.x_start != start ||
        b.x_end != std::min(config.x_hi, start + config.block_size - 1) ||
        (b.argmax != 0 && (b.argmax < b.x_start || b.argmax > b.x_end))) {
      throw corrupt(path, lineno, "block geometry does not match the configuration");
    }
    const std::uint64_t first = b.x_start + (config.sample_stride - (b.x_start - config.x_lo) % config.sample_stride) % config.sample_stride;
    const std::uint64_t sampled = first > b.x_end ? 0 : (b.x_end - first) / config.sample_stride + 1;
    b.points = 2 * sampled - (sampled > 0 && first == 1 ? 1 : 0);
    b.from_checkpoint = true;
    latest[b.block_index] = std::move(b);
  }

  for (auto& [index, b] : latest) {
    const u128 recomputed = summatory_hyperbola(config.k, b.x_end).value;
    if (recomputed != b.t_k_at_end) {
      throw CheckpointError(CheckpointError::Kind::SeedMismatch,
                            "stored T_" + std::to_string(config.k) + "(" + std::to_string(b.x_end) + ") = " +
                                to_string(b.t_k_at_end) + " but recomputed " + to_string(recomputed));
    }
    cp.blocks.push_back(std::move(b));
  }
  return cp;
}

}  // namespace piltz
