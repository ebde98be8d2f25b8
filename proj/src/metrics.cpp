#include "ssafs/metrics.hpp"

#include <string>

#include "ssafs/error.hpp"

namespace ssafs {

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred)
{
    if (y_true.size() != y_pred.size()) {
        throw ContractError("confusion: label vectors differ in length (" + std::to_string(y_true.size()) + " vs " +
                            std::to_string(y_pred.size()) + ")");
    }
    if (y_true.empty()) {
        throw ContractError("confusion: no samples");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const Label t = y_true[i];
        const Label p = y_pred[i];
        if ((t != kNormal && t != kFraud) || (p != kNormal && p != kFraud)) {
            throw ContractError("confusion: non-binary label at index " + std::to_string(i));
        }
        if (t == kFraud) {
            ++(p == kFraud ? cm.tp : cm.fn);
        } else {
            ++(p == kFraud ? cm.fp : cm.tn);
        }
    }
    return cm;
}

MetricSet metric_set(const ConfusionMatrix& cm)
{
    const std::size_t total = cm.total();
    if (total == 0) {
        throw ContractError("metric_set: empty confusion matrix");
    }
    const auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    MetricSet m;
    m.error = ratio(cm.fp + cm.fn, total);
    m.accuracy = 1.0 - m.error;
    m.recall = ratio(cm.tp, cm.tp + cm.fn);
    m.precision = ratio(cm.tp, cm.tp + cm.fp);
    const double denom = m.precision + m.recall;
    m.f1 = denom == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / denom;
    return m;
}

}  // namespace ssafs
