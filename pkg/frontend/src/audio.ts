import type { SoundCue } from "./types";

// Synthesised cues (no binary assets): every logical action makes a sound.
// Each cue is a list of [frequencyHz, startOffsetSec, durationSec] notes.
export const CUES: Record<SoundCue, [number, number, number][]> = {
  place: [[660, 0, 0.08]],
  remove: [[330, 0, 0.08]],
  connect: [[523, 0, 0.06], [784, 0.07, 0.06]],
  error: [[110, 0, 0.2]],
  level_complete: [[523, 0, 0.1], [659, 0.12, 0.1], [784, 0.24, 0.1], [1047, 0.36, 0.22]],
};

let ctx: AudioContext | undefined;
let muted = false;

function context(): AudioContext | undefined {
  if (typeof AudioContext === "undefined") return undefined; // jsdom, old browsers
  if (!ctx) ctx = new AudioContext();
  return ctx;
}

export function setMuted(value: boolean): void {
  muted = value;
}

export function isMuted(): boolean {
  return muted;
}

export function play(cue: SoundCue): void {
  if (muted) return;
  const audio = context();
  if (!audio) return;
  const now = audio.currentTime;
  for (const [freq, offset, duration] of CUES[cue]) {
    const osc = audio.createOscillator();
    const gain = audio.createGain();
    osc.type = cue === "error" ? "sawtooth" : "sine";
    osc.frequency.value = freq;
    gain.gain.setValueAtTime(0.12, now + offset);
    gain.gain.exponentialRampToValueAtTime(0.001, now + offset + duration);
    osc.connect(gain);
    gain.connect(audio.destination);
    osc.start(now + offset);
    osc.stop(now + offset + duration + 0.02);
  }
}
