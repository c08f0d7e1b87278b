// Oscillator and noise voices: nine drum one-shots matched to the grid
// rows, a lead voice for melody notes, and a soft triad pad for chords.
// Everything is synthesized on the fly; no samples are loaded.

const DRUM_RECIPES: Array<(ctx: AudioContext, out: AudioNode, t: number) => void> = [
  (ctx, out, t) => pitchDrop(ctx, out, t, 150, 45, 0.35, 1.0), // kick
  (ctx, out, t) => {
    noiseBurst(ctx, out, t, 0.18, 1800, "bandpass", 0.5);
    pitchDrop(ctx, out, t, 240, 170, 0.12, 0.4);
  }, // snare
  (ctx, out, t) => noiseBurst(ctx, out, t, 0.05, 7000, "highpass", 0.35), // closed hat
  (ctx, out, t) => noiseBurst(ctx, out, t, 0.3, 6500, "highpass", 0.3), // open hat
  (ctx, out, t) => pitchDrop(ctx, out, t, 180, 110, 0.3, 0.6), // low tom
  (ctx, out, t) => pitchDrop(ctx, out, t, 240, 150, 0.26, 0.6), // mid tom
  (ctx, out, t) => pitchDrop(ctx, out, t, 330, 210, 0.22, 0.6), // high tom
  (ctx, out, t) => noiseBurst(ctx, out, t, 0.9, 4500, "highpass", 0.4), // crash
  (ctx, out, t) => noiseBurst(ctx, out, t, 0.5, 8000, "bandpass", 0.25), // ride
];

let noiseBuffer: AudioBuffer | null = null;

function sharedNoise(ctx: AudioContext): AudioBuffer {
  if (noiseBuffer === null || noiseBuffer.sampleRate !== ctx.sampleRate) {
    const length = ctx.sampleRate;
    noiseBuffer = ctx.createBuffer(1, length, ctx.sampleRate);
    const data = noiseBuffer.getChannelData(0);
    for (let i = 0; i < length; i++) data[i] = Math.random() * 2 - 1;
  }
  return noiseBuffer;
}

function envelope(
  ctx: AudioContext,
  out: AudioNode,
  t: number,
  peak: number,
  decay: number,
): GainNode {
  const gain = ctx.createGain();
  gain.gain.setValueAtTime(peak, t);
  gain.gain.exponentialRampToValueAtTime(0.001, t + decay);
  gain.connect(out);
  return gain;
}

function pitchDrop(
  ctx: AudioContext,
  out: AudioNode,
  t: number,
  from: number,
  to: number,
  decay: number,
  peak: number,
): void {
  const osc = ctx.createOscillator();
  osc.type = "sine";
  osc.frequency.setValueAtTime(from, t);
  osc.frequency.exponentialRampToValueAtTime(to, t + decay);
  osc.connect(envelope(ctx, out, t, peak, decay));
  osc.start(t);
  osc.stop(t + decay + 0.05);
}

function noiseBurst(
  ctx: AudioContext,
  out: AudioNode,
  t: number,
  decay: number,
  frequency: number,
  kind: BiquadFilterType,
  peak: number,
): void {
  const source = ctx.createBufferSource();
  source.buffer = sharedNoise(ctx);
  const filter = ctx.createBiquadFilter();
  filter.type = kind;
  filter.frequency.value = frequency;
  source.connect(filter);
  filter.connect(envelope(ctx, out, t, peak, decay));
  source.start(t);
  source.stop(t + decay + 0.05);
}

export function playDrum(
  ctx: AudioContext,
  out: AudioNode,
  track: number,
  time: number,
): void {
  const recipe = DRUM_RECIPES[track];
  if (recipe) recipe(ctx, out, time);
}

export function playNote(
  ctx: AudioContext,
  out: AudioNode,
  midiPitch: number,
  time: number,
  duration: number,
  peak = 0.35,
  type: OscillatorType = "triangle",
): void {
  const osc = ctx.createOscillator();
  osc.type = type;
  osc.frequency.value = 440 * Math.pow(2, (midiPitch - 69) / 12);
  const gain = ctx.createGain();
  gain.gain.setValueAtTime(0.0001, time);
  gain.gain.linearRampToValueAtTime(peak, time + 0.01);
  gain.gain.setValueAtTime(peak, time + Math.max(0.01, duration - 0.04));
  gain.gain.linearRampToValueAtTime(0.0001, time + duration);
  osc.connect(gain);
  gain.connect(out);
  osc.start(time);
  osc.stop(time + duration + 0.05);
}

// Root-position triad, one octave below the melody register, played softly.
export function playChord(
  ctx: AudioContext,
  out: AudioNode,
  root: number,
  quality: "maj" | "min",
  time: number,
  duration: number,
): void {
  const base = 48 + root;
  const third = quality === "min" ? 3 : 4;
  for (const interval of [0, third, 7]) {
    playNote(ctx, out, base + interval, time, duration, 0.12, "sawtooth");
  }
}
