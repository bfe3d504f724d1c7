// SPDX-License-Identifier: Apache-2.0
//
// coopmimo - cascaded precoding with D2D receiver cooperation
// Copyright (C) 2026 The coopmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Umbrella header.

#ifndef COOPMIMO_HPP
#define COOPMIMO_HPP

#include "coopmimo/bounds.hpp"
#include "coopmimo/channel.hpp"
#include "coopmimo/codebook.hpp"
#include "coopmimo/config.hpp"
#include "coopmimo/decoding_matrix.hpp"
#include "coopmimo/errors.hpp"
#include "coopmimo/experiment.hpp"
#include "coopmimo/linalg.hpp"
#include "coopmimo/precoding.hpp"
#include "coopmimo/quantization.hpp"
#include "coopmimo/random.hpp"
#include "coopmimo/report.hpp"
#include "coopmimo/transceiver.hpp"
#include "coopmimo/types.hpp"

#endif
