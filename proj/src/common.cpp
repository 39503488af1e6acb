#include "vennprob/common.hpp"

namespace vennprob {

const char* to_string(ConfigClass c) {
    switch (c) {
        case ConfigClass::Generic: return "Generic";
        case ConfigClass::MultiArc: return "MultiArc";
        case ConfigClass::PairwiseLens: return "PairwiseLens";
        case ConfigClass::Contained: return "Contained";
        case ConfigClass::Empty: return "Empty";
        case ConfigClass::Degenerate: return "Degenerate";
    }
    return "Unknown";
}

}  // namespace vennprob
