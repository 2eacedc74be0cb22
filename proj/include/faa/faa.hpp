// SPDX-License-Identifier: Apache-2.0
//
// faa - flexible antenna array channel modelling and optimization
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

#ifndef FAA_FAA_HPP
#define FAA_FAA_HPP

#include "faa/error.hpp"
#include "faa/geometry.hpp"
#include "faa/radiation.hpp"
#include "faa/channel.hpp"
#include "faa/scenario.hpp"
#include "faa/estimation.hpp"
#include "faa/precoding.hpp"
#include "faa/bayesopt.hpp"
#include "faa/harness.hpp"

#endif
