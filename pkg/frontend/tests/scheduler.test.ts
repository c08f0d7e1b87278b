import { describe, expect, it } from "vitest";
import {
  StepEvent,
  Transport,
  collectDue,
  startCursor,
  stepDuration,
  withBpm,
} from "../src/core/scheduler";

const DRUM_TRANSPORT: Transport = { bpm: 120, stepsPerBeat: 24, stepsPerLoop: 96 };

// Deterministic irregular tick sizes between 5 and 45 ms.
function tickSize(i: number): number {
  return 0.005 + ((i * 2654435761) % 1000) / 1000 * 0.04;
}

describe("look-ahead scheduling", () => {
  it("emits every step exactly once in order across 8 loops", () => {
    const wanted = 8 * DRUM_TRANSPORT.stepsPerLoop;
    let cursor = startCursor(0.1);
    let now = 0;
    const events: StepEvent[] = [];
    for (let i = 0; events.length < wanted; i += 1) {
      now += tickSize(i);
      const out = collectDue(cursor, DRUM_TRANSPORT, now, 0.1);
      cursor = out.cursor;
      events.push(...out.events);
    }
    const run = events.slice(0, wanted);
    expect(run[0].step).toBe(0);
    expect(run[0].loop).toBe(0);
    for (let i = 1; i < run.length; i += 1) {
      expect(run[i].step).toBe((run[i - 1].step + 1) % DRUM_TRANSPORT.stepsPerLoop);
      expect(run[i].time).toBeGreaterThan(run[i - 1].time);
    }
    for (let i = 0; i < run.length; i += 1) {
      expect(run[i].loop).toBe(Math.floor(i / DRUM_TRANSPORT.stepsPerLoop));
    }
  });

  it("spaces steps by the transport's step duration", () => {
    let cursor = startCursor(0);
    const out = collectDue(cursor, DRUM_TRANSPORT, 0, 1.0);
    const duration = stepDuration(DRUM_TRANSPORT);
    expect(duration).toBeCloseTo(60 / 120 / 24, 12);
    for (let i = 1; i < out.events.length; i += 1) {
      expect(out.events[i].time - out.events[i - 1].time).toBeCloseTo(duration, 9);
    }
  });

  it("keeps the step sequence gapless across a BPM change", () => {
    const wanted = 8 * DRUM_TRANSPORT.stepsPerLoop;
    let transport = DRUM_TRANSPORT;
    let cursor = startCursor(0.1);
    let now = 0;
    const events: StepEvent[] = [];
    let switched = false;
    for (let i = 0; events.length < wanted; i += 1) {
      now += tickSize(i + 7);
      const out = collectDue(cursor, transport, now, 0.1);
      cursor = out.cursor;
      events.push(...out.events);
      if (!switched && events.length >= wanted / 2) {
        transport = withBpm(transport, 78);
        switched = true;
      }
    }
    expect(switched).toBe(true);
    const run = events.slice(0, wanted);
    for (let i = 1; i < run.length; i += 1) {
      expect(run[i].step).toBe((run[i - 1].step + 1) % transport.stepsPerLoop);
      expect(run[i].time).toBeGreaterThan(run[i - 1].time);
    }
    const last = run[run.length - 1];
    expect(last.loop).toBe(7);
    expect(last.step).toBe(transport.stepsPerLoop - 1);
    const tail = run.slice(-4);
    const slow = stepDuration(transport);
    for (let i = 1; i < tail.length; i += 1) {
      expect(tail[i].time - tail[i - 1].time).toBeCloseTo(slow, 9);
    }
  });

  it("catches up without losing steps when a tick stalls", () => {
    let cursor = startCursor(0);
    let events: StepEvent[] = [];
    let out = collectDue(cursor, DRUM_TRANSPORT, 0, 0.05);
    cursor = out.cursor;
    events = events.concat(out.events);
    // a long stall: the next tick arrives half a second later
    out = collectDue(cursor, DRUM_TRANSPORT, 0.5, 0.05);
    cursor = out.cursor;
    events = events.concat(out.events);
    for (let i = 1; i < events.length; i += 1) {
      expect(events[i].step).toBe((events[i - 1].step + 1) % 96);
    }
    const duration = stepDuration(DRUM_TRANSPORT);
    expect(events.length).toBe(Math.ceil(0.55 / duration));
  });
});
