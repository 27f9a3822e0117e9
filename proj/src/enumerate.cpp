#include "ait/enumerate.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ait::machine {

namespace {

constexpr unsigned kFrontierDepth = 9;

BitString bits_of(const std::vector<std::uint8_t>& buf) {
  BitString out;
  for (std::uint8_t b : buf) out.push_back(b != 0);
  return out;
}

// Depth-first walk over input extensions of the running execution. `path` and
// `buf` are shared mutable scratch: restored after every branch.
void dfs(const Execution& ex, BitString& path, std::vector<std::uint8_t>& buf,
         unsigned max_len, std::vector<HaltingProgram>& hits) {
  for (int b = 0; b < 2; ++b) {
    Execution child = ex;
    std::size_t mark = buf.size();
    path.push_back(b != 0);
    child.feed(b != 0);
    switch (child.state()) {
      case Execution::State::halted:
        hits.push_back({path, bits_of(buf), child.steps()});
        break;
      case Execution::State::need_bit:
        if (path.size() < max_len) dfs(child, path, buf, max_len, hits);
        break;
      default:
        break;  // invalid or out of budget: no extension can recover
    }
    path.pop_back();
    buf.resize(mark);
  }
}

struct FrontierNode {
  Execution ex;
  BitString path;
  std::vector<std::uint8_t> buf;
};

void frontier_walk(const Execution& ex, BitString& path, std::vector<std::uint8_t>& buf,
                   unsigned depth, unsigned max_len, std::vector<HaltingProgram>& hits,
                   std::vector<FrontierNode>& frontier) {
  for (int b = 0; b < 2; ++b) {
    Execution child = ex;
    std::size_t mark = buf.size();
    path.push_back(b != 0);
    child.feed(b != 0);
    switch (child.state()) {
      case Execution::State::halted:
        hits.push_back({path, bits_of(buf), child.steps()});
        break;
      case Execution::State::need_bit:
        if (path.size() == depth) {
          frontier.push_back({child, path, buf});
        } else if (path.size() < max_len) {
          frontier_walk(child, path, buf, depth, max_len, hits, frontier);
        }
        break;
      default:
        break;
    }
    path.pop_back();
    buf.resize(mark);
  }
}

void canonical_sort(std::vector<HaltingProgram>& hits) {
  std::sort(hits.begin(), hits.end(), [](const HaltingProgram& a, const HaltingProgram& b) {
    return canonical_less(a.code, b.code);
  });
}

}  // namespace

std::vector<HaltingProgram> enumerate_halting_serial(const EnumParams& params) {
  std::vector<HaltingProgram> hits;
  if (params.max_len == 0) return hits;
  std::vector<std::uint8_t> buf;
  Execution root(&params.condition, &buf, params.step_budget);
  BitString path;
  dfs(root, path, buf, params.max_len, hits);
  canonical_sort(hits);
  return hits;
}

std::vector<HaltingProgram> enumerate_halting(const EnumParams& params, int threads) {
#ifndef _OPENMP
  (void)threads;
  return enumerate_halting_serial(params);
#else
  if (threads == 1 || params.max_len <= kFrontierDepth) return enumerate_halting_serial(params);

  std::vector<HaltingProgram> hits;
  std::vector<FrontierNode> frontier;
  {
    std::vector<std::uint8_t> buf;
    Execution root(&params.condition, &buf, params.step_budget);
    BitString path;
    frontier_walk(root, path, buf, kFrontierDepth, params.max_len, hits, frontier);
  }

  std::vector<std::vector<HaltingProgram>> per_node(frontier.size());
  int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    FrontierNode& node = frontier[i];
    node.ex.set_output(&node.buf);
    dfs(node.ex, node.path, node.buf, params.max_len, per_node[i]);
  }
  for (auto& part : per_node)
    for (auto& h : part) hits.push_back(std::move(h));
  canonical_sort(hits);
  return hits;
#endif
}

ComplexityTable::ComplexityTable(EnumParams params, int threads)
    : params_(std::move(params)), programs_(enumerate_halting(params_, threads)) {
  best_.reserve(programs_.size());
  for (std::uint32_t i = 0; i < programs_.size(); ++i)
    best_.try_emplace(programs_[i].output, i);  // first hit is canonically least
}

ComplexityEstimate ComplexityTable::estimate(const BitString& x, Kind kind) const {
  ComplexityEstimate est;
  est.kind = kind;
  est.conditioned_on = params_.condition;
  est.step_budget = params_.step_budget;
  est.max_len = params_.max_len;
  est.machine_version = MachineSpec::version();

  BitString literal = MachineSpec::literal_program(x);
  auto it = best_.find(x);
  if (it != best_.end() && programs_[it->second].code.size() <= literal.size()) {
    est.witness = programs_[it->second].code;
  } else {
    est.witness = literal;
  }
  est.value = est.witness.size();
  return est;
}

ComplexityEstimate complexity_upper(const BitString& x, const BitString& condition,
                                    long long step_budget, unsigned max_len, int threads) {
  ComplexityTable table({condition, step_budget, max_len}, threads);
  return table.estimate(x);
}

std::vector<OscillationPoint> oscillation_profile(const BitString& w, long long step_budget,
                                                  unsigned max_len, int threads) {
  std::vector<OscillationPoint> profile;
  profile.reserve(w.size());
  for (unsigned n = 1; n <= w.size(); ++n) {
    ComplexityTable table({from_index(n), step_budget, max_len}, threads);
    ComplexityEstimate est = table.estimate(w.prefix(n));
    profile.push_back({n, static_cast<long long>(n) - static_cast<long long>(est.value)});
  }
  return profile;
}

BitString rle_compress(const BitString& x) {
  std::vector<std::pair<bool, std::uint64_t>> runs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!runs.empty() && runs.back().first == x.bit(i)) {
      ++runs.back().second;
    } else {
      runs.push_back({x.bit(i), 1});
    }
  }
  BitString out = encode_sd1(from_index(runs.size()));  // header: run count
  for (auto& [b, len] : runs) {
    out.push_back(b);
    out.append(encode_sd1(from_index(len - 1)));
  }
  return out;
}

BitString rle_decompress(const BitString& compressed) {
  Decoded header = decode_sd1(compressed, 0);
  std::uint64_t runs = to_index(header.value);
  std::size_t pos = header.consumed;
  BitString out;
  for (std::uint64_t r = 0; r < runs; ++r) {
    if (pos >= compressed.size()) throw MalformedPrefix("rle: truncated run header");
    bool b = compressed.bit(pos++);
    Decoded len = decode_sd1(compressed, pos);
    pos += len.consumed;
    std::uint64_t count = to_index(len.value) + 1;
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(b);
  }
  return out;
}

CompressorEstimate compressor_bound(const BitString& x, const std::string& codec) {
  if (codec == "rle") {
    CompressorEstimate est;
    est.codec = codec;
    est.compressed = rle_compress(x);
    est.value = est.compressed.size();
    return est;
  }
  if (codec == "identity") {
    CompressorEstimate est;
    est.codec = codec;
    est.compressed = encode_sd2(x);
    est.value = est.compressed.size();
    return est;
  }
  throw UnknownCodec("compressor_bound: unknown codec '" + codec + "'");
}

}  // namespace ait::machine
