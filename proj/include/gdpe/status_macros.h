//
// Copyright 2026 The gdpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef GDPE_STATUS_MACROS_H_
#define GDPE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define GDPE_CONCAT_INNER_(a, b) a##b
#define GDPE_CONCAT_(a, b) GDPE_CONCAT_INNER_(a, b)

#define GDPE_RETURN_IF_ERROR(expr)                \
  do {                                            \
    const absl::Status gdpe_status_ = (expr);     \
    if (!gdpe_status_.ok()) return gdpe_status_;  \
  } while (0)

#define GDPE_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                \
  if (!statusor.ok()) return statusor.status();           \
  lhs = std::move(statusor).value()

#define GDPE_ASSIGN_OR_RETURN(lhs, rexpr) \
  GDPE_ASSIGN_OR_RETURN_IMPL_(GDPE_CONCAT_(gdpe_statusor_, __LINE__), lhs, rexpr)

#endif  // GDPE_STATUS_MACROS_H_
