# Copyright 2023-2024 The MaxMax Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

__all__ = ["EvaluationResult", "evaluate_agents", "rollout_episode"]

from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np

from maxmax.models.replay import Batch


@dataclass
class EvaluationResult:
    """Returns of greedy episodes and the transitions they visited."""

    returns: np.ndarray
    final_locations: Optional[np.ndarray] = None
    states: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    joint_actions: np.ndarray = field(default_factory=lambda: np.zeros((0, 0, 0)))
    next_states: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    @property
    def mean_return(self):
        return float(np.mean(self.returns))

    def agent_batch(self, agent_index):
        """Transitions seen from one agent, rewards left at zero."""
        return Batch(
            states=self.states,
            actions=self.joint_actions[:, agent_index, :],
            rewards=np.zeros(len(self.states)),
            next_states=self.next_states,
        )


def rollout_episode(agents, env, greedy=True):
    """Play one episode with every agent acting on the shared state.

    Returns
    -------
    float, list:
        Undiscounted return with the raw environment rewards and the list of
        (state, joint action, next state) triples.
    """
    state = env.reset()
    episode_return = 0.0
    transitions = []
    done = False
    while not done:
        joint_action = np.stack([agent.act(state, greedy=greedy) for agent in agents])
        result = env.step(joint_action)
        transitions.append((state, joint_action, result.next_state))
        episode_return += result.reward
        state = result.next_state
        done = result.done
    return episode_return, transitions


def evaluate_agents(agents, env, n_episodes):
    """Evaluate the greedy joint policy.

    Arguments
    ---------
    agents: list
        One agent per environment agent.
    env: BaseEnv
        Evaluation environment, normally a noise-free copy of the training
        environment.
    n_episodes: int
        Number of episodes.

    Returns
    -------
    EvaluationResult:
        Returns per episode, the final location metric for environments
        that have one, and all visited transitions.
    """
    returns = []
    locations = []
    transitions = []
    for _ in range(n_episodes):
        episode_return, episode = rollout_episode(agents, env, greedy=True)
        returns.append(episode_return)
        transitions.extend(episode)
        if hasattr(env, "location"):
            locations.append(env.location())

    states, joint_actions, next_states = (np.array(x) for x in zip(*transitions))
    return EvaluationResult(
        returns=np.array(returns),
        final_locations=np.array(locations) if locations else None,
        states=states,
        joint_actions=joint_actions,
        next_states=next_states,
    )
