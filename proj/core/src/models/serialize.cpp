#include "recbench/models/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "recbench/common/error.hpp"

namespace recbench {
namespace {

constexpr std::array<char, 4> kMagic = {'R', 'B', 'F', 'M'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) { le(v, 4); }
  void u64(std::uint64_t v) { le(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void csr(const CsrMatrix& m) {
    u64(m.rows);
    u64(m.cols);
    u64(m.nnz());
    for (const auto p : m.indptr) u64(p);
    for (const auto i : m.indices) u32(i);
    for (const auto v : m.values) f64(v);
  }

 private:
  void le(std::uint64_t v, int bytes) {
    for (int b = 0; b < bytes; ++b) out_.put(static_cast<char>((v >> (8 * b)) & 0xff));
  }
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
  std::uint64_t u64() { return le(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t count(std::uint64_t limit) {
    const auto n = u64();
    if (n > limit) throw Error("model file: implausible size field");
    return static_cast<std::size_t>(n);
  }
  CsrMatrix csr() {
    CsrMatrix m;
    m.rows = count(kSizeLimit);
    m.cols = count(kSizeLimit);
    const std::size_t nnz = count(kSizeLimit);
    m.indptr.resize(m.rows + 1);
    for (auto& p : m.indptr) p = count(nnz);
    m.indices.resize(nnz);
    for (auto& i : m.indices) i = u32();
    m.values.resize(nnz);
    for (auto& v : m.values) v = f64();
    if (m.indptr.front() != 0 || m.indptr.back() != nnz) throw Error("model file: corrupt csr");
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (m.indptr[r] > m.indptr[r + 1]) throw Error("model file: corrupt csr");
    }
    for (const auto i : m.indices) {
      if (i >= m.cols) throw Error("model file: corrupt csr");
    }
    return m;
  }

  static constexpr std::uint64_t kSizeLimit = std::uint64_t{1} << 40;

 private:
  std::uint64_t le(int bytes) {
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) {
      const int c = in_.get();
      if (c == std::char_traits<char>::eof()) throw Error("model file: truncated");
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
    }
    return v;
  }
  std::istream& in_;
};

}  // namespace

void save_model(const FittedModel& model, std::ostream& out) {
  Writer w(out);
  out.write(kMagic.data(), kMagic.size());
  w.u32(kModelFormatVersion);
  w.u8(static_cast<std::uint8_t>(model.kind()));
  const HyperParams& p = model.spec().params;
  const std::uint8_t present = (p.topk ? 1 : 0) | (p.shrink ? 2 : 0) | (p.weighting ? 4 : 0) |
                               (p.alpha ? 8 : 0) | (p.beta ? 16 : 0) | (p.l2 ? 32 : 0);
  w.u8(present);
  w.u64(p.topk.value_or(0));
  w.f64(p.shrink.value_or(0.0));
  w.u8(static_cast<std::uint8_t>(p.weighting.value_or(Weighting::None)));
  w.f64(p.alpha.value_or(0.0));
  w.f64(p.beta.value_or(0.0));
  w.f64(p.l2.value_or(0.0));
  w.u64(model.n_users());
  w.u64(model.n_items());
  w.csr(model.train().csr());
  w.u8(static_cast<std::uint8_t>(model.state().index()));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PopularityState>) {
          w.u64(s.popularity.size());
          for (const double v : s.popularity) w.f64(v);
        } else if constexpr (std::is_same_v<T, DenseItemWeightsState>) {
          w.u64(s.weights.size());
          for (const double v : s.weights) w.f64(v);
        } else {
          w.csr(s.weights);
        }
      },
      model.state());
  if (!out) throw Error("model file: write failed");
}

FittedModel load_model(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error("model file: bad magic");
  Reader r(in);
  const std::uint32_t version = r.u32();
  if (version != kModelFormatVersion) {
    throw Error("model file: unsupported version " + std::to_string(version));
  }
  const std::uint8_t kind = r.u8();
  if (kind >= kAllModelKinds.size()) throw Error("model file: bad kind tag");
  ModelSpec spec;
  spec.kind = static_cast<ModelKind>(kind);
  const std::uint8_t present = r.u8();
  const std::uint64_t topk = r.u64();
  const double shrink = r.f64();
  const std::uint8_t weighting = r.u8();
  const double alpha = r.f64();
  const double beta = r.f64();
  const double l2 = r.f64();
  if (weighting > static_cast<std::uint8_t>(Weighting::Bm25)) throw Error("model file: bad weighting");
  if (present & 1) spec.params.topk = static_cast<std::size_t>(topk);
  if (present & 2) spec.params.shrink = shrink;
  if (present & 4) spec.params.weighting = static_cast<Weighting>(weighting);
  if (present & 8) spec.params.alpha = alpha;
  if (present & 16) spec.params.beta = beta;
  if (present & 32) spec.params.l2 = l2;

  const std::size_t n_users = r.count(Reader::kSizeLimit);
  const std::size_t n_items = r.count(Reader::kSizeLimit);
  auto train = std::make_shared<const InteractionMatrix>(InteractionMatrix::from_csr(r.csr()));
  if (train->n_users() != n_users || train->n_items() != n_items) {
    throw Error("model file: dimension mismatch");
  }

  ModelState state;
  switch (r.u8()) {
    case 0: {
      PopularityState s;
      s.popularity.resize(r.count(Reader::kSizeLimit));
      for (auto& v : s.popularity) v = r.f64();
      if (s.popularity.size() != n_items) throw Error("model file: payload size mismatch");
      state = std::move(s);
      break;
    }
    case 1: state = ItemSimilarityState{r.csr()}; break;
    case 2: state = UserSimilarityState{r.csr()}; break;
    case 3: {
      DenseItemWeightsState s;
      s.weights.resize(r.count(Reader::kSizeLimit));
      for (auto& v : s.weights) v = r.f64();
      if (s.weights.size() != n_items * n_items) throw Error("model file: payload size mismatch");
      state = std::move(s);
      break;
    }
    default: throw Error("model file: bad state tag");
  }
  return FittedModel(std::move(spec), std::move(train), std::move(state));
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  save_model(model, out);
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return load_model(in);
}

}  // namespace recbench
