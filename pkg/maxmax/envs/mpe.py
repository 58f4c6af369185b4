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

"""Cooperative particle tasks with relative over-generalization.

Agents are disks moving with damped double-integrator kinematics in a square
arena. The shared reward is a three-case rule over which agents overlap the
disk D of a target: all inside, some inside (penalized) or none inside.
"""

__all__ = [
    "MPE_VARIANTS",
    "REWARD_TABLE",
    "CooperativeNavigation",
    "HeterogeneousAgentsNavigation",
    "HeterogeneousTargetsNavigation",
    "MorePenaltyNavigation",
    "MpeEnv",
    "MpeTaskSpec",
    "PredatorPrey",
    "RewardRule",
    "SequentialNavigation",
    "mpe_reset",
    "mpe_reward",
    "mpe_step",
    "pp_prey_policy",
]

from dataclasses import dataclass
from typing import Optional

import numpy as np

from maxmax.config import DEFAULT_EPISODE_LENGTH
from maxmax.config import SEQUENTIAL_EPISODE_LENGTH
from maxmax.envs.base import BaseEnv
from maxmax.envs.base import StepResult
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import ShapeError
from maxmax.utils import get_random_state

MPE_VARIANTS = ("CN", "MorePenalty", "HT", "HA", "PP", "Sequential")

# initial landmark box and rejection sampling budget
LANDMARK_RANGE = 1.0
MAX_PLACEMENT_TRIES = 1000


@dataclass(frozen=True)
class RewardRule:
    """Constants of the three-case reward.

    ``r_out`` None means -3 (r_D + r_a); ``r_in`` None means -3 times the
    smallest agent-target center distance.
    """

    r_out: Optional[float]
    r_in: Optional[float]
    penalty: float


REWARD_TABLE = {
    "CN": RewardRule(None, None, 0.2),
    "MorePenalty": RewardRule(None, None, 0.5),
    "HA": RewardRule(None, None, 0.2),
    "PP": RewardRule(None, None, 0.5),
    "HT_A": RewardRule(-3.0, 0.0, 0.5),
    "HT_B": RewardRule(-3.0, -2.5, 0.0),
    "Sequential": RewardRule(-6.0, -3.0, 0.5),
    "Sequential_cargo": RewardRule(-6.0, -0.5, 0.5),
}


@dataclass
class MpeTaskSpec:
    """Geometry, physics and reward variant of a particle task.

    Attributes left None take the variant default: alpha is 0.3 for PP and
    0.2 otherwise; HA uses agent radii (0.15, 0.20) and speed multipliers
    (1.0, 0.7).
    """

    variant: str = "CN"
    n_agents: int = 2
    agent_radius: float = 0.15
    target_radius: float = 0.05
    alpha: Optional[float] = None
    agent_radii: Optional[tuple] = None
    speed_multipliers: Optional[tuple] = None
    dt: float = 0.1
    damping: float = 0.25
    accel: float = 5.0
    arena: float = 1.5
    prey_speed_ratio: float = 1.3
    wall_margin: float = 0.1

    def __post_init__(self):
        if self.variant not in MPE_VARIANTS:
            raise InvalidConfigurationError(
                f"Unknown particle task variant '{self.variant}', "
                f"expected one of {MPE_VARIANTS}"
            )
        if self.n_agents < 2:
            raise InvalidConfigurationError("Particle tasks need at least 2 agents")
        if self.alpha is None:
            self.alpha = 0.3 if self.variant == "PP" else 0.2
        if self.agent_radii is None:
            if self.variant == "HA":
                self.agent_radii = (0.15, 0.20)
            else:
                self.agent_radii = (self.agent_radius,) * self.n_agents
        if self.speed_multipliers is None:
            if self.variant == "HA":
                self.speed_multipliers = (1.0, 0.7)
            else:
                self.speed_multipliers = (1.0,) * self.n_agents
        if (
            len(self.agent_radii) != self.n_agents
            or len(self.speed_multipliers) != self.n_agents
        ):
            raise InvalidConfigurationError(
                "Agent radii and speed multipliers need one entry per agent"
            )
        if not 0.0 <= self.damping < 1.0:
            raise InvalidConfigurationError("damping should be in [0, 1)")

    @property
    def disk_radius(self):
        return self.target_radius + self.alpha

    @property
    def n_targets(self):
        return 2 if self.variant in ("HT", "Sequential") else 1

    @property
    def has_cargo(self):
        return self.variant == "Sequential"

    @property
    def state_dim(self):
        return 4 * self.n_agents + 2 * self.n_targets + int(self.has_cargo)

    @property
    def max_speed(self):
        """Terminal speed of a unit-multiplier agent under a unit action."""
        return self.accel * self.dt / self.damping

    @property
    def default_episode_length(self):
        if self.variant == "Sequential":
            return SEQUENTIAL_EPISODE_LENGTH
        return DEFAULT_EPISODE_LENGTH


def _split_state(state, spec):
    state = np.asarray(state, dtype=float)
    if state.shape != (spec.state_dim,):
        raise ShapeError(
            f"State of variant {spec.variant} has size {spec.state_dim}, "
            f"got shape {state.shape}"
        )
    n = spec.n_agents
    agents = state[: 4 * n].reshape(n, 4)
    targets = state[4 * n : 4 * n + 2 * spec.n_targets].reshape(spec.n_targets, 2)
    cargo = state[-1] if spec.has_cargo else 0.0
    return agents[:, :2], agents[:, 2:], targets, cargo


def _join_state(positions, velocities, targets, cargo, spec):
    parts = [np.concatenate([positions, velocities], axis=1).ravel(), targets.ravel()]
    if spec.has_cargo:
        parts.append(np.array([cargo], dtype=float))
    return np.concatenate(parts)


def _overlaps(positions, target, spec):
    distance = np.linalg.norm(positions - target, axis=1)
    return distance <= np.asarray(spec.agent_radii) + spec.disk_radius, distance


def _rule_reward(rule, positions, target, spec):
    inside, distance = _overlaps(positions, target, spec)
    if rule.r_out is None:
        r_out = -3.0 * (spec.disk_radius + spec.agent_radius)
    else:
        r_out = rule.r_out

    if inside.all():
        if rule.r_in is None:
            return -3.0 * float(distance.min())
        return rule.r_in
    if inside.any():
        return r_out - rule.penalty
    return r_out


def mpe_reward(state, spec):
    """Shared reward of a particle-task state.

    Heterogeneous targets check target A first; target B only scores when no
    agent overlaps A. The sequential task scores target A with the row that
    matches the cargo flag.
    """
    positions, _, targets, cargo = _split_state(state, spec)

    if spec.variant == "HT":
        inside_a, _ = _overlaps(positions, targets[0], spec)
        if inside_a.any():
            return _rule_reward(REWARD_TABLE["HT_A"], positions, targets[0], spec)
        return _rule_reward(REWARD_TABLE["HT_B"], positions, targets[1], spec)

    if spec.variant == "Sequential":
        key = "Sequential_cargo" if cargo >= 0.5 else "Sequential"
        return _rule_reward(REWARD_TABLE[key], positions, targets[0], spec)

    return _rule_reward(REWARD_TABLE[spec.variant], positions, targets[0], spec)


def pp_prey_policy(state, rng=None, spec=None):
    """Scripted evader: run straight away from the nearest predator.

    Ties between equally near predators go to the lowest index. Within the
    wall margin the component pointing into the wall is removed so the prey
    slides along it.

    Returns
    -------
    np.ndarray:
        Unit direction of the prey.
    """
    spec = MpeTaskSpec(variant="PP") if spec is None else spec
    positions, _, targets, _ = _split_state(state, spec)
    prey = targets[0]

    distance = np.linalg.norm(positions - prey, axis=1)
    nearest = int(np.argmin(distance))
    away = prey - positions[nearest]
    norm = np.linalg.norm(away)
    if norm < 1e-12:
        angle = get_random_state(rng).uniform(0.0, 2.0 * np.pi)
        away = np.array([np.cos(angle), np.sin(angle)])
    else:
        away = away / norm

    direction = away.copy()
    limit = spec.arena - spec.wall_margin
    for axis in range(2):
        if prey[axis] >= limit and direction[axis] > 0:
            direction[axis] = 0.0
        elif prey[axis] <= -limit and direction[axis] < 0:
            direction[axis] = 0.0

    norm = np.linalg.norm(direction)
    if norm < 1e-12:
        # cornered head-on: slide along the wall, away from the predator
        blocked = int(np.argmax(np.abs(away)))
        free = 1 - blocked
        offset = prey[free] - positions[nearest][free]
        sign = 1.0 if offset >= 0 else -1.0
        if abs(prey[free]) >= limit and np.sign(prey[free]) == sign:
            sign = -sign
        direction = np.zeros(2)
        direction[free] = sign
        return direction
    return direction / norm


def mpe_reset(spec, rng=None):
    """Random targets in the central box, agents outside every target disk."""
    random_state = get_random_state(rng)

    targets = np.zeros((spec.n_targets, 2))
    for k in range(spec.n_targets):
        for _ in range(MAX_PLACEMENT_TRIES):
            candidate = random_state.uniform(-LANDMARK_RANGE, LANDMARK_RANGE, size=2)
            if k == 0 or np.all(
                np.linalg.norm(targets[:k] - candidate, axis=1) > 2 * spec.disk_radius
            ):
                break
        targets[k] = candidate

    positions = np.zeros((spec.n_agents, 2))
    for i in range(spec.n_agents):
        clearance = spec.agent_radii[i] + spec.disk_radius
        for _ in range(MAX_PLACEMENT_TRIES):
            candidate = random_state.uniform(-spec.arena, spec.arena, size=2)
            if np.all(np.linalg.norm(targets - candidate, axis=1) > clearance):
                break
        positions[i] = candidate

    velocities = np.zeros((spec.n_agents, 2))
    return _join_state(positions, velocities, targets, 0.0, spec)


def mpe_step(state, joint_action, spec, rng=None, t=None, episode_length=None):
    """Advance a particle task by one time step.

    Arguments
    ---------
    state: np.ndarray
        Global state vector of the variant.
    joint_action: np.ndarray
        One 2-D force per agent, clamped to [-1, 1].
    spec: MpeTaskSpec
        Task variant and physics.
    rng: SeededRandomState
        Random source of the scripted prey.
    t: int
        Index of the step being taken, used for the episode cutoff.
    episode_length: int
        Episode length, default 25 (50 for the sequential task).

    Returns
    -------
    StepResult:
        Next state, shared reward and cutoff flag.
    """
    positions, velocities, targets, cargo = _split_state(state, spec)
    action = np.asarray(joint_action, dtype=float)
    try:
        action = np.clip(action.reshape(spec.n_agents, 2), -1.0, 1.0)
    except ValueError:
        raise ShapeError(f"Expected {spec.n_agents} actions of size 2")

    accel = spec.accel * np.asarray(spec.speed_multipliers, dtype=float)[:, None]
    velocities = (1.0 - spec.damping) * velocities + action * accel * spec.dt
    positions = positions + velocities * spec.dt

    outside = np.abs(positions) > spec.arena
    positions = np.clip(positions, -spec.arena, spec.arena)
    velocities = np.where(outside, 0.0, velocities)

    targets = targets.copy()
    if spec.variant == "PP":
        direction = pp_prey_policy(state, rng, spec)
        prey_speed = spec.prey_speed_ratio * spec.max_speed
        targets[0] = np.clip(
            targets[0] + direction * prey_speed * spec.dt, -spec.arena, spec.arena
        )

    if spec.has_cargo and cargo < 0.5:
        inside_b, _ = _overlaps(positions, targets[1], spec)
        if inside_b.all():
            cargo = 1.0

    next_state = _join_state(positions, velocities, targets, cargo, spec)
    if episode_length is None:
        episode_length = spec.default_episode_length
    done = t is not None and t >= episode_length
    return StepResult(
        next_state=next_state, reward=float(mpe_reward(next_state, spec)), done=done
    )


class MpeEnv(BaseEnv):
    """Particle task environment for one reward variant."""

    name = "mpe"
    label = "Particle task"
    variant = "CN"

    def __init__(
        self, n_agents=2, alpha=None, episode_length=None, random_state=None
    ):
        self.spec = MpeTaskSpec(variant=self.variant, n_agents=n_agents, alpha=alpha)
        if episode_length is None:
            episode_length = self.spec.default_episode_length
        super().__init__(
            n_agents=n_agents,
            episode_length=episode_length,
            random_state=random_state,
        )
        self.alpha = self.spec.alpha

    @property
    def state_dim(self):
        return self.spec.state_dim

    @property
    def action_dim(self):
        return 2

    def state_bounds(self):
        spec = self.spec
        max_velocity = spec.max_speed * max(spec.speed_multipliers)
        agent_high = np.tile(
            [spec.arena, spec.arena, max_velocity, max_velocity], spec.n_agents
        )
        high = np.concatenate([agent_high, np.full(2 * spec.n_targets, spec.arena)])
        if spec.has_cargo:
            high = np.append(high, 1.0)
        low = -high
        if spec.has_cargo:
            low[-1] = 0.0
        return low, high

    def _reset(self):
        return mpe_reset(self.spec, self._random_state)

    def _step(self, state, joint_action, t):
        return mpe_step(
            state,
            joint_action,
            self.spec,
            rng=self._random_state,
            t=t,
            episode_length=self.episode_length,
        )


class CooperativeNavigation(MpeEnv):
    name = "cn"
    label = "Cooperative navigation"
    variant = "CN"


class MorePenaltyNavigation(MpeEnv):
    name = "cn_more_penalty"
    label = "Cooperative navigation, more penalty"
    variant = "MorePenalty"


class HeterogeneousTargetsNavigation(MpeEnv):
    name = "cn_ht"
    label = "Cooperative navigation, heterogeneous targets"
    variant = "HT"


class HeterogeneousAgentsNavigation(MpeEnv):
    name = "cn_ha"
    label = "Cooperative navigation, heterogeneous agents"
    variant = "HA"


class PredatorPrey(MpeEnv):
    name = "pp"
    label = "Predator-prey with a scripted prey"
    variant = "PP"


class SequentialNavigation(MpeEnv):
    name = "sequential"
    label = "Sequential task with cargo"
    variant = "Sequential"
