#include "zkprov/common/io.h"

#include <fstream>
#include <iterator>

#include "zkprov/algebra/hash.h"

namespace zkprov {

namespace fs = std::filesystem;

Bytes read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::span<const uint8_t> data, fs::perms mode) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    fs::permissions(tmp, mode, fs::perm_options::replace);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

Bytes seal(ByteWriter&& w) {
  auto digest = algebra::sha256(w.bytes());
  w.raw(digest);
  return w.take();
}

std::span<const uint8_t> unseal(std::span<const uint8_t> data) {
  if (data.size() < 32) throw DecodeError("missing checksum trailer");
  auto body = data.first(data.size() - 32);
  auto digest = algebra::sha256(body);
  if (!std::equal(digest.begin(), digest.end(), data.end() - 32)) throw DecodeError("checksum mismatch");
  return body;
}

}  // namespace zkprov
