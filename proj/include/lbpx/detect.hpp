#pragma once

#include "lbpx/classify.hpp"
#include "lbpx/image.hpp"

#include <vector>

namespace lbpx {

/// Window hit. Score is the chi-square distance to the face template, so
/// lower is better.
struct Detection {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;
    double score = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Intersection over union of two inclusive pixel rectangles.
double iou(const Detection& a, const Detection& b) noexcept;

struct ScanOptions {
    int window_width = 0;
    int window_height = 0;
    int stride = 1;
    double threshold = 0.0;
    unsigned threads = 1;
};

/// Slides a window over `scene` on the stride grid (positions 0, stride,
/// ... while the window fits) and keeps windows whose chi2 distance to the
/// model's single template is <= threshold. Result sorted by ascending
/// score, ties in row-major scan order.
///
/// Throws ParameterError for a window larger than the scene, stride < 1 or
/// negative threshold, and ModelMismatchError unless the model has exactly
/// one class.
std::vector<Detection> scan_detect(const GrayImage& scene, const Model& face_model, const ScanOptions& options);

/// Greedy non-maximum suppression: keep the lowest-score box, drop the
/// rest that overlap it with IoU > iou_threshold, repeat. Ties in score go
/// to the earlier box in row-major order.
std::vector<Detection> nms(std::vector<Detection> detections, double iou_threshold);

} // namespace lbpx
