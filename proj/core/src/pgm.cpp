#include "ctsd/pgm.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace ctsd {

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

int parse_header_int(std::istream& in, const std::filesystem::path& path, const char* what) {
  const std::string token = next_token(in);
  if (token.empty()) {
    throw Error(errc::malformed_header, path.string() + ": missing " + what);
  }
  try {
    std::size_t consumed = 0;
    const int value = std::stoi(token, &consumed);
    if (consumed != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(errc::malformed_header, path.string() + ": invalid " + what + " '" + token + "'");
  }
}

}  // namespace

BinaryMask read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(errc::io_error, "cannot open " + path.string());
  }

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P' || magic[1] != '5') {
    throw Error(errc::malformed_header,
                path.string() + ": not a binary PGM (expected magic 'P5')");
  }

  const int width = parse_header_int(in, path, "width");
  const int height = parse_header_int(in, path, "height");
  const int maxval = parse_header_int(in, path, "maxval");
  if (width < 1 || height < 1) {
    throw Error(errc::malformed_header, path.string() + ": non-positive dimensions");
  }
  if (maxval != 255) {
    throw Error(errc::unsupported_maxval,
                path.string() + ": maxval " + std::to_string(maxval) + " (only 255 supported)");
  }
  // next_token consumed exactly one whitespace byte after the maxval

  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw Error(errc::truncated_data,
                path.string() + ": expected " + std::to_string(n) + " pixel bytes, got " +
                    std::to_string(in.gcount()));
  }

  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = raw[i] >= 128 ? 1 : 0;
  return BinaryMask(width, height, std::move(bits));
}

void write_pgm(const BinaryMask& mask, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(errc::io_error, "cannot open " + path.string() + " for writing");
  }
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  std::vector<std::uint8_t> raw(mask.bits().size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = mask.bits()[i] ? 255 : 0;
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) {
    throw Error(errc::io_error, "failed writing " + path.string());
  }
}

}  // namespace ctsd
