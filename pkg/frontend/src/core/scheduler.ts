// Pure look-ahead scheduling math for the audio transport. The engine
// asks, every tick, for all loop steps whose start time falls inside
// [now, now + lookAhead) and stamps each with its exact audio-clock
// time; the returned cursor guarantees every step is emitted exactly
// once, in order, across loop boundaries and tempo changes.

export interface Transport {
  bpm: number;
  stepsPerBeat: number;
  stepsPerLoop: number;
}

export interface SchedulerCursor {
  nextIndex: number; // monotonically increasing step counter
  nextTime: number; // audio-clock time of that step
}

export interface StepEvent {
  step: number; // index within the loop
  loop: number;
  time: number;
}

export function stepDuration(transport: Transport): number {
  return 60 / transport.bpm / transport.stepsPerBeat;
}

export function startCursor(startTime: number): SchedulerCursor {
  return { nextIndex: 0, nextTime: startTime };
}

export function collectDue(
  cursor: SchedulerCursor,
  transport: Transport,
  now: number,
  lookAhead: number,
): { events: StepEvent[]; cursor: SchedulerCursor } {
  const duration = stepDuration(transport);
  const horizon = now + lookAhead;
  const events: StepEvent[] = [];
  let { nextIndex, nextTime } = cursor;
  while (nextTime < horizon) {
    events.push({
      step: nextIndex % transport.stepsPerLoop,
      loop: Math.floor(nextIndex / transport.stepsPerLoop),
      time: nextTime,
    });
    nextIndex += 1;
    nextTime += duration;
  }
  return { events, cursor: { nextIndex, nextTime } };
}

// Changing the tempo keeps the already-committed next step boundary, so
// the step sequence stays gapless: only durations after it change.
export function withBpm(transport: Transport, bpm: number): Transport {
  return { ...transport, bpm };
}
