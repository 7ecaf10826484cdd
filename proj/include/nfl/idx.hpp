#pragma once

// IDX (MNIST) image and label files: big-endian u32 magic and dimensions
// followed by unsigned bytes.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfl {

class IdxError : public std::runtime_error {
 public:
  enum class Kind { BadMagic, Truncated, DimsOverflow, LabelRange, TrailingData, Io, Checksum };

  IdxError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct IdxImages {
  std::uint32_t count = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major per image

  /// Pixel k of image i scaled to k / 255.
  double scaled(std::size_t image, std::size_t offset) const;
};

/// Throws IdxError (BadMagic, Truncated, DimsOverflow, TrailingData).
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);

/// Throws IdxError (BadMagic, Truncated, LabelRange, TrailingData). Labels
/// must be at most max_label.
std::vector<int> parse_idx_labels(std::span<const std::uint8_t> bytes, int max_label = 9);

std::vector<std::uint8_t> write_idx_images(const IdxImages& images);
std::vector<std::uint8_t> write_idx_labels(std::span<const int> labels);

/// Images as a (rows*cols) x count matrix with entries in [0,1].
Eigen::MatrixXd images_to_matrix(const IdxImages& images);

struct ImageDataset {
  Eigen::MatrixXd images;  // one image per column, pixels in [0,1]
  std::vector<int> labels;
  std::string split;
};

/// Reads the whole file. Throws IdxError(Io) when it cannot be opened.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

/// Parses a manifest of "filename<TAB>byte_size" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::uintmax_t>> parse_manifest(const std::string& text);

/// Loads an image/label file pair. When `manifest` is non-empty, each file's
/// size is checked against its manifest entry (IdxError(Checksum) on mismatch).
ImageDataset load_idx_dataset(const std::filesystem::path& images_path,
                              const std::filesystem::path& labels_path, const std::string& split,
                              const std::filesystem::path& manifest = {});

}  // namespace nfl
