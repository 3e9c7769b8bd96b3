#include "zsl/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "zsl/errors.hpp"

namespace zsl {
namespace {

void put(std::ostream& os, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  os.write(buf, 8);
}

double get(std::istream& is) {
  char buf[8];
  if (!is.read(buf, 8)) throw IoError("checkpoint: truncated data");
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return std::bit_cast<double>(bits);
}

void put_real(std::ostream& os, const RealField& f) {
  for (double v : f.values()) put(os, v);
}

void put_complex(std::ostream& os, const ComplexField& f) {
  for (const cplx& v : f.values()) {
    put(os, v.real());
    put(os, v.imag());
  }
}

void get_real(std::istream& is, RealField& f) {
  for (double& v : f.values()) v = get(is);
}

void get_complex(std::istream& is, ComplexField& f) {
  for (cplx& v : f.values()) {
    const double re = get(is);
    v = cplx(re, get(is));
  }
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const ZakharovState& s, double lambda) {
  const Grid2D& g = s.grid();
  nlohmann::ordered_json h;
  h["format"] = "zsl-checkpoint";
  h["version"] = 1;
  h["nx"] = g.nx();
  h["ny"] = g.ny();
  h["lx"] = g.lx();
  h["ly"] = g.ly();
  h["t"] = s.t;
  h["lambda"] = lambda;
  h["fields"] = nlohmann::ordered_json::array({
      {{"name", "u"}, {"kind", "complex"}},
      {{"name", "n"}, {"kind", "real"}},
      {{"name", "vx"}, {"kind", "real"}},
      {{"name", "vy"}, {"kind", "real"}},
  });

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open checkpoint for writing: " + path.string());
  os << h.dump() << '\n';
  put_complex(os, s.u);
  put_real(os, s.n);
  put_real(os, s.v.x);
  put_real(os, s.v.y);
  os.flush();
  if (!os) throw IoError("failed writing checkpoint: " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint: " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw IoError("checkpoint: missing header in " + path.string());

  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
    if (h.at("format") != "zsl-checkpoint") throw IoError("checkpoint: unknown format");
    if (h.at("version") != 1) throw IoError("checkpoint: unsupported version");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("checkpoint: bad header: ") + e.what());
  }

  GridPtr grid;
  Checkpoint out;
  try {
    grid = make_grid(h.at("nx").get<int>(), h.at("ny").get<int>(), h.at("lx").get<double>(),
                     h.at("ly").get<double>());
    out.lambda = h.at("lambda").get<double>();
    out.state = ZakharovState::zero(grid, h.at("t").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("checkpoint: bad header: ") + e.what());
  } catch (const UsageError& e) {
    throw IoError(std::string("checkpoint: bad grid: ") + e.what());
  }

  std::vector<std::pair<std::string, std::string>> fields;
  try {
    for (const auto& f : h.at("fields")) {
      fields.emplace_back(f.at("name").get<std::string>(), f.at("kind").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("checkpoint: bad field list: ") + e.what());
  }
  for (const auto& [name, kind] : fields) {
    if (name == "u" && kind == "complex") {
      get_complex(is, out.state.u);
    } else if (name == "n" && kind == "real") {
      get_real(is, out.state.n);
    } else if (name == "vx" && kind == "real") {
      get_real(is, out.state.v.x);
    } else if (name == "vy" && kind == "real") {
      get_real(is, out.state.v.y);
    } else {
      throw IoError("checkpoint: unexpected field " + name + " (" + kind + ")");
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) throw IoError("checkpoint: trailing data");
  return out;
}

}  // namespace zsl
