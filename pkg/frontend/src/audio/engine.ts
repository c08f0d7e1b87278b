// Audio transport: a timer tick collects due steps from the pure
// scheduler core and stamps each voice onto the WebAudio clock a little
// ahead of real time. Playback-position callbacks fire on the same
// schedule, so every visual playhead stays in sync with what is heard.

import {
  SchedulerCursor,
  StepEvent,
  Transport,
  collectDue,
  startCursor,
  withBpm,
} from "../core/scheduler";

export const DEFAULT_BPM = 120;
const LOOK_AHEAD_SECONDS = 0.12;
const TICK_MILLISECONDS = 30;

export interface LoopSpec {
  stepsPerBeat: number;
  stepsPerLoop: number;
  // Called once per scheduled step with the audio-clock time to render at.
  onStep: (ctx: AudioContext, out: AudioNode, event: StepEvent) => void;
  // Optional end condition: stop after this many loops.
  loops?: number;
}

type StepListener = (step: number, loop: number) => void;
type StopListener = () => void;

export class AudioEngine {
  private ctx: AudioContext | null = null;
  private master: GainNode | null = null;
  private timer: number | null = null;
  private cursor: SchedulerCursor | null = null;
  private transport: Transport | null = null;
  private spec: LoopSpec | null = null;
  private stepListeners: StepListener[] = [];
  private stopListeners: StopListener[] = [];
  private pendingUi: Array<{ at: number; step: number; loop: number }> = [];

  onStep(listener: StepListener): void {
    this.stepListeners.push(listener);
  }

  onStop(listener: StopListener): void {
    this.stopListeners.push(listener);
  }

  get playing(): boolean {
    return this.timer !== null;
  }

  setBpm(bpm: number): void {
    if (this.transport) this.transport = withBpm(this.transport, bpm);
  }

  start(spec: LoopSpec, bpm = DEFAULT_BPM): void {
    this.stop();
    const ctx = this.ensureContext();
    this.spec = spec;
    this.transport = {
      bpm,
      stepsPerBeat: spec.stepsPerBeat,
      stepsPerLoop: spec.stepsPerLoop,
    };
    this.cursor = startCursor(ctx.currentTime + 0.05);
    this.timer = window.setInterval(() => this.tick(), TICK_MILLISECONDS);
    this.tick();
  }

  stop(): void {
    const wasPlaying = this.timer !== null;
    if (this.timer !== null) {
      window.clearInterval(this.timer);
      this.timer = null;
    }
    this.cursor = null;
    this.spec = null;
    this.pendingUi = [];
    if (wasPlaying) {
      for (const listener of this.stopListeners) listener();
    }
  }

  private ensureContext(): AudioContext {
    if (this.ctx === null) {
      this.ctx = new AudioContext();
      this.master = this.ctx.createGain();
      this.master.gain.value = 0.8;
      this.master.connect(this.ctx.destination);
    }
    if (this.ctx.state === "suspended") void this.ctx.resume();
    return this.ctx;
  }

  private tick(): void {
    if (!this.ctx || !this.master || !this.cursor || !this.transport || !this.spec) {
      return;
    }
    const { events, cursor } = collectDue(
      this.cursor,
      this.transport,
      this.ctx.currentTime,
      LOOK_AHEAD_SECONDS,
    );
    this.cursor = cursor;
    for (const event of events) {
      if (this.spec.loops !== undefined && event.loop >= this.spec.loops) {
        this.stop();
        return;
      }
      this.spec.onStep(this.ctx, this.master, event);
      this.pendingUi.push({ at: event.time, step: event.step, loop: event.loop });
    }
    const now = this.ctx.currentTime;
    while (this.pendingUi.length > 0 && this.pendingUi[0].at <= now) {
      const due = this.pendingUi.shift()!;
      for (const listener of this.stepListeners) listener(due.step, due.loop);
    }
  }
}

export const engine = new AudioEngine();
