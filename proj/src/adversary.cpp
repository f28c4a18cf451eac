#include "tdos/adversary.hpp"

#include <cmath>

namespace tdos {

std::vector<MissionAction> apply_flash_crowd(const MissionAction& action, double surge) {
    const int copies = static_cast<int>(std::llround(surge));
    if (copies <= 1) return {action};

    std::vector<MissionAction> out;
    out.reserve(static_cast<std::size_t>(copies));
    out.push_back(action);
    for (int i = 1; i < copies; ++i) {
        MissionAction extra = action;
        extra.action_id = action.action_id + "~fc" + std::to_string(i);
        extra.client_id = action.client_id + "~fc" + std::to_string(i);
        out.push_back(extra);
    }
    return out;
}

} // namespace tdos
