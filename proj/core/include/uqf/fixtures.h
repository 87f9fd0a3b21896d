// Copyright 2026 The UQF Authors.
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


#ifndef UQF_FIXTURES_H_
#define UQF_FIXTURES_H_

#include "uqf/pomdp.h"

namespace uqf {

// Two states, one observation.  Action 0 stays, action 1 swaps; the reward
// is the current state's index (R[s,a] = s).  Starts in state 0, gamma 0.5.
Pomdp chain_pomdp();

// Three states on a line, actions 0 = left and 1 = right (blocked at the
// ends), one observation.  Any action in state 2 pays 1.  Starts in state 0,
// gamma 0.9.
Pomdp line_world();

}  // namespace uqf

#endif  // UQF_FIXTURES_H_
