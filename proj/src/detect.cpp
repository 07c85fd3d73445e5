#include "lbpx/detect.hpp"

#include "lbpx/errors.hpp"
#include "lbpx/parallel.hpp"

#include <algorithm>
#include <string>

namespace lbpx {

namespace {

bool scan_order_less(const Detection& a, const Detection& b) noexcept {
    if (a.score != b.score) return a.score < b.score;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
}

} // namespace

double iou(const Detection& a, const Detection& b) noexcept {
    const long ix = std::max(0, std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x));
    const long iy = std::max(0, std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y));
    const long inter = ix * iy;
    const long uni = static_cast<long>(a.width) * a.height + static_cast<long>(b.width) * b.height - inter;
    return uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

std::vector<Detection> scan_detect(const GrayImage& scene, const Model& face_model, const ScanOptions& options) {
    if (face_model.classes.size() != 1) {
        throw ModelMismatchError("detection needs a single-class template model, got " +
                                 std::to_string(face_model.classes.size()) + " classes");
    }
    const int ww = options.window_width;
    const int wh = options.window_height;
    if (ww < 1 || wh < 1 || ww > scene.width() || wh > scene.height()) {
        throw ParameterError("window " + std::to_string(ww) + "x" + std::to_string(wh) + " does not fit scene " +
                             std::to_string(scene.width()) + "x" + std::to_string(scene.height()));
    }
    if (options.stride < 1) throw ParameterError("stride must be >= 1");
    if (!(options.threshold >= 0.0)) throw ParameterError("threshold must be >= 0");

    const GridDescriptor& face = face_model.classes.front().descriptor;
    const int margin = face_model.params.origin_offset();
    if (ww - 2 * margin < face_model.grid_cols || wh - 2 * margin < face_model.grid_rows) {
        throw ParameterError("window " + std::to_string(ww) + "x" + std::to_string(wh) +
                             " too small for the model's LBP margin and grid");
    }

    // A window's LBP map equals the matching sub-rectangle of the scene's
    // map, so the scene is encoded once.
    const LbpMap scene_map = lbp_map(scene, face_model.params, options.threads);

    const int nx = (scene.width() - ww) / options.stride + 1;
    const int ny = (scene.height() - wh) / options.stride + 1;
    const auto positions = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    std::vector<double> scores(positions);

    parallel_for(positions, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const int x = static_cast<int>(i % static_cast<std::size_t>(nx)) * options.stride;
            const int y = static_cast<int>(i / static_cast<std::size_t>(nx)) * options.stride;
            const MapRect roi{x, y, x + ww - 2 * margin - 1, y + wh - 2 * margin - 1};
            const auto desc = grid_descriptor(scene_map, roi, face_model.grid_rows, face_model.grid_cols);
            if (!desc.same_configuration(face)) throw ModelMismatchError("window descriptor does not match template");
            scores[i] = distance(desc.values, face.values, Metric::chi2);
        }
    });

    std::vector<Detection> hits;
    for (std::size_t i = 0; i < positions; ++i) {
        if (scores[i] > options.threshold) continue;
        hits.push_back({static_cast<int>(i % static_cast<std::size_t>(nx)) * options.stride,
                        static_cast<int>(i / static_cast<std::size_t>(nx)) * options.stride, ww, wh, scores[i]});
    }
    std::stable_sort(hits.begin(), hits.end(), scan_order_less);
    return hits;
}

std::vector<Detection> nms(std::vector<Detection> detections, double iou_threshold) {
    std::stable_sort(detections.begin(), detections.end(), scan_order_less);
    std::vector<Detection> kept;
    std::vector<bool> suppressed(detections.size(), false);
    for (std::size_t i = 0; i < detections.size(); ++i) {
        if (suppressed[i]) continue;
        kept.push_back(detections[i]);
        for (std::size_t j = i + 1; j < detections.size(); ++j) {
            if (!suppressed[j] && iou(detections[i], detections[j]) > iou_threshold) suppressed[j] = true;
        }
    }
    return kept;
}

} // namespace lbpx
