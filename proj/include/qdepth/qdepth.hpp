// Copyright 2026 The qdepth Authors
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

#pragma once

#include "qdepth/catalog.hpp"
#include "qdepth/circuit.hpp"
#include "qdepth/classical.hpp"
#include "qdepth/matrix.hpp"
#include "qdepth/serialize.hpp"
#include "qdepth/simulator.hpp"
#include "qdepth/synthesis.hpp"
#include "qdepth/verify.hpp"
