#pragma once

#include "isocryst/dieudonne.hpp"
#include "isocryst/forms.hpp"
#include "isocryst/local_model.hpp"

#include <json.hpp>

namespace isocryst {

using json = nlohmann::json;

json params_json(const FieldParams& p);
json elem_json(const EisensteinRing& R, const EisensteinRing::Elem& x); // coefficient strings
json mat_json(const EisensteinRing& R, const EMat& A);
json module_json(const DieudonneModule& M);
json report_json(const VerificationReport& rep);
json quad_class_json(const QuadClass& c);
json point_json(const ChainRing& R, const LocalModelPoint& pt);

} // namespace isocryst
