#include "molcav/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include <zlib.h>

#include "molcav/error.hpp"

namespace molcav {

namespace {

constexpr char kMagic[8] = {'M', 'O', 'L', 'C', 'A', 'V', 'C', 'K'};
constexpr std::size_t kHeaderBytes = 64;

void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_u64(std::vector<unsigned char>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<unsigned char>(v >> (8 * i)));
}
void put_f64(std::vector<unsigned char>& b, double v) { put_u64(b, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}
double get_f64(const unsigned char* p) { return std::bit_cast<double>(get_u64(p)); }

std::uint32_t crc(const unsigned char* data, std::size_t n) {
  uLong c = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    c = crc32(c, data, chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(c);
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const auto& basis = ckpt.state.basis;
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderBytes + 16 * basis.size() + 4);
  buf.insert(buf.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(buf, kCheckpointVersion);
  put_u32(buf, 0);
  put_u64(buf, basis.n1());
  put_u64(buf, basis.n2());
  put_u64(buf, basis.nf());
  put_f64(buf, ckpt.dt);
  put_u64(buf, ckpt.step);
  put_u64(buf, ckpt.config_hash);
  for (Eigen::Index i = 0; i < ckpt.state.amplitudes.size(); ++i) {
    put_f64(buf, ckpt.state.amplitudes(i).real());
    put_f64(buf, ckpt.state.amplitudes(i).imag());
  }
  put_u32(buf, crc(buf.data(), buf.size()));

  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write checkpoint " + tmp.string());
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw FormatError("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kHeaderBytes + 4) throw FormatError("checkpoint truncated: " + path.string());
  if (std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0) throw FormatError("not a molcav checkpoint: " + path.string());
  const std::uint32_t version = get_u32(buf.data() + 8);
  if (version != kCheckpointVersion) throw FormatError("unsupported checkpoint version " + std::to_string(version));

  const std::uint64_t n1 = get_u64(buf.data() + 16), n2 = get_u64(buf.data() + 24), nf = get_u64(buf.data() + 32);
  if (n1 == 0 || n2 == 0 || nf == 0 || n1 > (1u << 20) || n2 > (1u << 20) || nf > (1u << 20))
    throw FormatError("checkpoint has implausible dimensions");
  const std::uint64_t n = n1 * n2 * nf;
  if (buf.size() != kHeaderBytes + 16 * n + 4) throw FormatError("checkpoint size does not match its dimensions");
  const std::uint32_t stored = get_u32(buf.data() + buf.size() - 4);
  if (stored != crc(buf.data(), buf.size() - 4)) throw FormatError("checkpoint checksum mismatch: " + path.string());

  Checkpoint c;
  c.dt = get_f64(buf.data() + 40);
  c.step = get_u64(buf.data() + 48);
  c.config_hash = get_u64(buf.data() + 56);
  c.state = StateVector(CompositeIndex(n1, n2, nf));
  const unsigned char* p = buf.data() + kHeaderBytes;
  for (std::uint64_t i = 0; i < n; ++i, p += 16)
    c.state.amplitudes(static_cast<Eigen::Index>(i)) = {get_f64(p), get_f64(p + 8)};
  return c;
}

}  // namespace molcav
