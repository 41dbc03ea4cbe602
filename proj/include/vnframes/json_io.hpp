// vnframes/json_io.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_JSON_IO_HPP
#define VNFRAMES_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "vnframes/bracket.hpp"
#include "vnframes/helson.hpp"
#include "vnframes/modular.hpp"
#include "vnframes/representation.hpp"
#include "vnframes/vn_algebra.hpp"

namespace vnframes {

// All files are UTF-8 JSON with stable field ordering. Complex numbers
// serialize as [re, im] pairs; NaN and Inf are rejected on both paths.
using Json = nlohmann::ordered_json;

Json group_to_json(const FiniteGroup& g);
/// Identity and inverses are recomputed and the table fully revalidated.
GroupPtr group_from_json(const Json& j);

Json vector_to_json(const Eigen::VectorXcd& v);
Eigen::VectorXcd vector_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json vn_to_json(const VnOperator& f);
VnOperator vn_from_json(const Json& j, const GroupPtr& fallback = nullptr);

Json rep_to_json(const UnitaryRep& rep);
UnitaryRep rep_from_json(const Json& j, const GroupPtr& fallback = nullptr);

Json action_to_json(const GroupAction& a);
GroupAction action_from_json(const Json& j, const GroupPtr& fallback = nullptr);

Json tiling_to_json(const TilingData& t);
std::vector<int> tile_from_json(const Json& j);

Json image_to_json(const HelsonImage& img);
HelsonImage image_from_json(const Json& j, const GroupPtr& group);

Json frame_report_to_json(const FrameReport& r);
Json modular_report_to_json(const ModularReport& r);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace vnframes

#endif  // VNFRAMES_JSON_IO_HPP
