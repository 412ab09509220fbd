// Copyright 2026 The padicval Authors
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

#include "padicval/equivalence.hpp"
#include "padicval/errors.hpp"
#include "padicval/expr.hpp"
#include "padicval/extensions.hpp"
#include "padicval/intval.hpp"
#include "padicval/krasner.hpp"
#include "padicval/linalg.hpp"
#include "padicval/minpoly.hpp"
#include "padicval/newton.hpp"
#include "padicval/polynomial.hpp"
#include "padicval/rational.hpp"
#include "padicval/serialize.hpp"
#include "padicval/stacked.hpp"
#include "padicval/tower.hpp"
#include "padicval/valuation_domain.hpp"
#include "padicval/version.hpp"
