#include "patchcert/run_config.hpp"

namespace patchcert {

void RunConfig::validate() const {
    scheme().validate();
    label_space().validate();
    for (int side : patch_sides) {
        PatchSpec{side}.validate(scheme());
    }
    for (int k : k_values) {
        if (k < 1 || k >= num_labels) {
            throw ConfigError("config: k=" + std::to_string(k) +
                              " outside [1, num_labels) with num_labels=" +
                              std::to_string(num_labels));
        }
    }
    if (patch_sides.empty()) throw ConfigError("config: at least one patch side required");
    if (k_values.empty()) throw ConfigError("config: at least one k required");
    if (analyzers.empty()) throw ConfigError("config: at least one analyzer required");
}

}  // namespace patchcert
