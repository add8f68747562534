#pragma once

#include <filesystem>

#include "lumenorm/image.hpp"

namespace lumenorm {

enum class ImageFormat { pgm, png };

/// Pick the save format matching a path's extension (".png" -> png,
/// anything else -> pgm).
ImageFormat format_for_path(const std::filesystem::path& path);

/// Read a grayscale image. Supported containers: binary PGM (P5, maxval 255)
/// and PNG (8-bit gray, or 8-bit RGB reduced to gray with Rec.601 luma,
/// rounded half-up). The container is detected from the file's magic bytes.
///
/// Throws IoError when the file cannot be read and FormatError when it is
/// readable but not a supported image.
IntensityImage load_image(const std::filesystem::path& path);

/// Write a grayscale image as binary PGM (maxval 255) or 8-bit gray PNG.
/// Loading the written file restores the image bit-exactly.
void save_image(const IntensityImage& img, const std::filesystem::path& path,
                ImageFormat format);

}  // namespace lumenorm
