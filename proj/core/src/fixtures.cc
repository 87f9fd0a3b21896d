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


#include "uqf/fixtures.h"

namespace uqf {

Pomdp chain_pomdp() {
  Pomdp m;
  m.num_states = 2;
  m.num_actions = 2;
  m.num_obs = 1;
  m.transition = {Eigen::MatrixXd::Identity(2, 2),
                  (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished()};
  m.emission.assign(2, Eigen::MatrixXd::Ones(2, 1));
  m.reward = (Eigen::MatrixXd(2, 2) << 0, 0, 1, 1).finished();
  m.initial = Eigen::Vector2d(1.0, 0.0);
  m.gamma = 0.5;
  return m;
}

Pomdp line_world() {
  Pomdp m;
  m.num_states = 3;
  m.num_actions = 2;
  m.num_obs = 1;
  Eigen::MatrixXd left = Eigen::MatrixXd::Zero(3, 3);
  Eigen::MatrixXd right = Eigen::MatrixXd::Zero(3, 3);
  for (int s = 0; s < 3; ++s) {
    left(s, s > 0 ? s - 1 : 0) = 1.0;
    right(s, s < 2 ? s + 1 : 2) = 1.0;
  }
  m.transition = {left, right};
  m.emission.assign(2, Eigen::MatrixXd::Ones(3, 1));
  m.reward = Eigen::MatrixXd::Zero(3, 2);
  m.reward.row(2).setOnes();
  m.initial = Eigen::Vector3d(1.0, 0.0, 0.0);
  m.gamma = 0.9;
  return m;
}

}  // namespace uqf
