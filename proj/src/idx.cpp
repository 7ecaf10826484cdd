#include "nfl/idx.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace nfl {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t pos) {
  return static_cast<std::uint32_t>(bytes[pos]) << 24 | static_cast<std::uint32_t>(bytes[pos + 1]) << 16 |
         static_cast<std::uint32_t>(bytes[pos + 2]) << 8 | static_cast<std::uint32_t>(bytes[pos + 3]);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void need(std::span<const std::uint8_t> bytes, std::uint64_t expected) {
  if (bytes.size() < expected) {
    throw IdxError(IdxError::Kind::Truncated, "IDX file truncated: expected " + std::to_string(expected) +
                                                  " bytes, got " + std::to_string(bytes.size()));
  }
}

void no_trailing(std::span<const std::uint8_t> bytes, std::uint64_t expected) {
  if (bytes.size() > expected) {
    throw IdxError(IdxError::Kind::TrailingData, "IDX file has " + std::to_string(bytes.size() - expected) +
                                                     " trailing bytes");
  }
}

void check_magic(std::uint32_t got, std::uint32_t want) {
  if (got != want) {
    std::ostringstream msg;
    msg << "bad IDX magic 0x" << std::hex << got << ", expected 0x" << want;
    throw IdxError(IdxError::Kind::BadMagic, msg.str());
  }
}

}  // namespace

double IdxImages::scaled(std::size_t image, std::size_t offset) const {
  return pixels[image * static_cast<std::size_t>(rows) * cols + offset] / 255.0;
}

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  need(bytes, 4);
  check_magic(read_be32(bytes, 0), kIdxImageMagic);
  need(bytes, 16);
  IdxImages out;
  out.count = read_be32(bytes, 4);
  out.rows = read_be32(bytes, 8);
  out.cols = read_be32(bytes, 12);
  // Three u32 factors fit in 96 bits; reject products beyond 2^48 before
  // allocating.
  const std::uint64_t pixels_per_image = static_cast<std::uint64_t>(out.rows) * out.cols;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 48;
  if (pixels_per_image > kLimit || (out.count > 0 && pixels_per_image > kLimit / out.count)) {
    throw IdxError(IdxError::Kind::DimsOverflow, "IDX image dimensions overflow");
  }
  const std::uint64_t expected = 16 + pixels_per_image * out.count;
  need(bytes, expected);
  no_trailing(bytes, expected);
  out.pixels.assign(bytes.begin() + 16, bytes.end());
  return out;
}

std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes, int max_label) {
  need(bytes, 4);
  check_magic(read_be32(bytes, 0), kIdxLabelMagic);
  need(bytes, 8);
  const std::uint64_t n = read_be32(bytes, 4);
  need(bytes, 8 + n);
  no_trailing(bytes, 8 + n);
  std::vector<int> labels(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    labels[i] = bytes[8 + i];
    if (labels[i] > max_label) {
      throw IdxError(IdxError::Kind::LabelRange, "label byte " + std::to_string(labels[i]) +
                                                     " at index " + std::to_string(i) + " exceeds " +
                                                     std::to_string(max_label));
    }
  }
  return labels;
}

std::vector<std::uint8_t> write_idx_images(const IdxImages& images) {
  std::vector<std::uint8_t> out;
  put_be32(out, kIdxImageMagic);
  put_be32(out, images.count);
  put_be32(out, images.rows);
  put_be32(out, images.cols);
  out.insert(out.end(), images.pixels.begin(), images.pixels.end());
  return out;
}

std::vector<std::uint8_t> write_idx_labels(std::span<const int> labels) {
  std::vector<std::uint8_t> out;
  put_be32(out, kIdxLabelMagic);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  for (int l : labels) {
    if (l < 0 || l > 255) throw IdxError(IdxError::Kind::LabelRange, "label does not fit in a byte");
    out.push_back(static_cast<std::uint8_t>(l));
  }
  return out;
}

Eigen::MatrixXd images_to_matrix(const IdxImages& images) {
  const Eigen::Index dim = static_cast<Eigen::Index>(images.rows) * images.cols;
  Eigen::MatrixXd m(dim, images.count);
  for (std::uint32_t i = 0; i < images.count; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(j, i) = images.scaled(i, j);
  }
  return m;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError(IdxError::Kind::Io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::pair<std::string, std::uintmax_t>> parse_manifest(const std::string& text) {
  std::vector<std::pair<std::string, std::uintmax_t>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IdxError(IdxError::Kind::Io, "manifest line " + std::to_string(lineno) + ": expected filename<TAB>size");
    }
    const std::string name = line.substr(0, tab);
    std::string size_text = line.substr(tab + 1);
    while (!size_text.empty() && (size_text.back() == '\r' || size_text.back() == ' ')) size_text.pop_back();
    std::size_t used = 0;
    std::uintmax_t size = 0;
    try {
      size = std::stoull(size_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != size_text.size()) {
      throw IdxError(IdxError::Kind::Io, "manifest line " + std::to_string(lineno) + ": bad byte size");
    }
    entries.emplace_back(name, size);
  }
  return entries;
}

ImageDataset load_idx_dataset(const std::filesystem::path& images_path,
                              const std::filesystem::path& labels_path, const std::string& split,
                              const std::filesystem::path& manifest) {
  const auto image_bytes = read_file_bytes(images_path);
  const auto label_bytes = read_file_bytes(labels_path);
  if (!manifest.empty()) {
    const auto text_bytes = read_file_bytes(manifest);
    const auto entries = parse_manifest(std::string(text_bytes.begin(), text_bytes.end()));
    const auto check = [&](const std::filesystem::path& p, std::size_t size) {
      for (const auto& [name, expected] : entries) {
        if (name == p.filename().string()) {
          if (expected != size) {
            throw IdxError(IdxError::Kind::Checksum, p.string() + ": size " + std::to_string(size) +
                                                         " does not match manifest " +
                                                         std::to_string(expected));
          }
          return;
        }
      }
      throw IdxError(IdxError::Kind::Checksum, p.filename().string() + " not listed in manifest");
    };
    check(images_path, image_bytes.size());
    check(labels_path, label_bytes.size());
  }
  const IdxImages images = parse_idx_images(image_bytes);
  std::vector<int> labels = parse_idx_labels(label_bytes);
  if (labels.size() != images.count) {
    throw IdxError(IdxError::Kind::Truncated, "image count " + std::to_string(images.count) +
                                                  " differs from label count " +
                                                  std::to_string(labels.size()));
  }
  return {images_to_matrix(images), std::move(labels), split};
}

}  // namespace nfl
