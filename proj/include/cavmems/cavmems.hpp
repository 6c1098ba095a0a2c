// Copyright 2026 The cavmems Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "cavmems/analytic.hpp"
#include "cavmems/evolution.hpp"
#include "cavmems/frontier.hpp"
#include "cavmems/linalg.hpp"
#include "cavmems/metrics.hpp"
#include "cavmems/model.hpp"
#include "cavmems/state.hpp"
#include "cavmems/trajectory.hpp"
#include "cavmems/version.hpp"
