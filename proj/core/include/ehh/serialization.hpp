#ifndef EHH_SERIALIZATION_HPP
#define EHH_SERIALIZATION_HPP

#include <optional>
#include <string>

#include "ehh/narx.hpp"
#include "ehh/network.hpp"

namespace ehh {

// Model document: JSON with every floating value written as a hex-float
// string, so a load-save round trip reproduces each double bit for bit.
// Optional lag metadata travels with models trained on NARX regressors.

std::string model_to_string(const EhhNetwork& net,
                            const std::optional<NarxSpec>& narx = {});
EhhNetwork model_from_string(const std::string& text,
                             std::optional<NarxSpec>* narx = nullptr);

void save_model(const std::string& path, const EhhNetwork& net,
                const std::optional<NarxSpec>& narx = {});
EhhNetwork load_model(const std::string& path,
                      std::optional<NarxSpec>* narx = nullptr);

// Hex-float helpers shared with the manifest writer.
std::string double_to_hex(double v);
double double_from_hex(const std::string& s);

}  // namespace ehh

#endif  // EHH_SERIALIZATION_HPP
