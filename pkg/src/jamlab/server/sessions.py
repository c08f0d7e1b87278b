"""In-memory Turing-game sessions: rounds, scoring, and answer custody.

The answer slot lives only here; round payloads built for the wire never
include it. Practice walks six fixed levels; challenge deals random
rounds until the third wrong guess. Sessions expire after 30 idle
minutes and all mutation happens under one lock.
"""
from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

import numpy as np

from ..music import ChordSequence, MelodyLine, chord_to_jsonable, melody_to_jsonable

PRACTICE_LEVELS = 6
CHALLENGE_MAX_WRONG = 3
SESSION_IDLE_SECONDS = 30 * 60


class UnknownIdError(KeyError):
    """Session or round id does not exist."""


class RoundClosedError(RuntimeError):
    """The round was already answered (or the game is over)."""


@dataclass
class TuringRound:
    round_id: str
    number: int
    melody: MelodyLine
    clip_model: ChordSequence
    clip_reference: ChordSequence
    answer_slot: int  # which presented slot holds the model clip
    answered: bool = False

    def payload(self) -> dict:
        """Wire form of the round; never carries the answer slot."""
        clips = [None, None]
        clips[self.answer_slot] = self.clip_model
        clips[1 - self.answer_slot] = self.clip_reference
        return {
            "round_id": self.round_id,
            "number": self.number,
            "melody": melody_to_jsonable(self.melody),
            "clips": [[chord_to_jsonable(c) for c in clip.chords] for clip in clips],
        }


@dataclass
class GameSession:
    session_id: str
    mode: str  # "practice" | "challenge"
    rng: np.random.Generator
    score: int = 0
    wrong: int = 0
    rounds_played: int = 0
    current: TuringRound | None = None
    answered_ids: set = field(default_factory=set)
    finished: bool = False
    last_touch: float = field(default_factory=time.monotonic)


class TuringGame:
    """Session store bound to a harmonization oracle and a sheet pool.

    ``practice_plan`` is a list of (melody, reference_chords, slot_seed)
    triples, one per fixed level; the slot seed pins each level's
    presentation permutation so practice rounds are identical for every
    player. ``challenge_pool`` holds (melody, reference_chords) pairs for
    random dealing. ``harmonize_fn(melody) -> ChordSequence`` supplies
    the model clip.
    """

    def __init__(self, harmonize_fn, practice_plan, challenge_pool):
        if len(practice_plan) != PRACTICE_LEVELS:
            raise ValueError(f"practice plan needs {PRACTICE_LEVELS} levels, got {len(practice_plan)}")
        if not challenge_pool:
            raise ValueError("challenge pool is empty")
        self._harmonize = harmonize_fn
        self._practice_plan = list(practice_plan)
        self._challenge_pool = list(challenge_pool)
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    # -- internals ----------------------------------------------------------

    def _expire(self, now: float):
        dead = [sid for sid, s in self._sessions.items()
                if now - s.last_touch > SESSION_IDLE_SECONDS]
        for sid in dead:
            del self._sessions[sid]

    def _deal(self, session: GameSession) -> TuringRound:
        number = session.rounds_played + 1
        if session.mode == "practice":
            melody, reference, slot_seed = self._practice_plan[number - 1]
            answer_slot = int(np.random.default_rng(slot_seed).integers(2))
        else:
            melody, reference = self._challenge_pool[
                int(session.rng.integers(len(self._challenge_pool)))]
            answer_slot = int(session.rng.integers(2))
        model_clip = self._harmonize(melody)
        round_ = TuringRound(
            round_id=secrets.token_hex(8),
            number=number,
            melody=melody,
            clip_model=model_clip,
            clip_reference=reference,
            answer_slot=answer_slot,
        )
        session.current = round_
        return round_

    # -- public api -----------------------------------------------------------

    def start(self, mode: str, seed: int | None = None) -> tuple[str, dict]:
        if mode not in ("practice", "challenge"):
            raise ValueError(f"mode must be practice or challenge, got {mode!r}")
        rng = np.random.default_rng(seed if seed is not None else secrets.randbits(63))
        session = GameSession(session_id=secrets.token_hex(8), mode=mode, rng=rng)
        with self._lock:
            self._expire(time.monotonic())
            self._sessions[session.session_id] = session
            round_ = self._deal(session)
            return session.session_id, round_.payload()

    def guess(self, session_id: str, round_id: str, slot: int) -> dict:
        with self._lock:
            now = time.monotonic()
            self._expire(now)
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownIdError("unknown session_id")
            session.last_touch = now
            round_ = session.current
            if round_ is None or round_.round_id != round_id:
                if round_id in session.answered_ids:
                    raise RoundClosedError("round already answered")
                raise UnknownIdError("unknown round_id")
            if session.finished or round_.answered:
                raise RoundClosedError("round already answered")
            round_.answered = True
            session.answered_ids.add(round_id)
            session.rounds_played += 1
            correct = slot == round_.answer_slot
            if correct:
                session.score += 1
            else:
                session.wrong += 1
            if session.mode == "practice":
                session.finished = session.rounds_played >= PRACTICE_LEVELS
            else:
                session.finished = session.wrong >= CHALLENGE_MAX_WRONG
            result = {
                "correct": correct,
                "score": session.score,
                "finished": session.finished,
            }
            if not session.finished:
                result["next_round"] = self._deal(session).payload()
            return result
