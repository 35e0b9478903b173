// Copyright 2026 The piqec Authors
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

#include "piqec/bosonic.hpp"
#include "piqec/codes.hpp"
#include "piqec/common.hpp"
#include "piqec/deletion.hpp"
#include "piqec/experiment.hpp"
#include "piqec/hilbert.hpp"
#include "piqec/noise.hpp"
#include "piqec/recovery.hpp"
#include "piqec/rus.hpp"
#include "piqec/schur.hpp"
#include "piqec/syndrome.hpp"
#include "piqec/tableaux.hpp"
#include "piqec/teleport.hpp"
