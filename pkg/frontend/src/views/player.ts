/** Pure playback model for the movement trace. Rendering and timers live
 * in the view; everything here is testable arithmetic. */

import type { AnimationFrame } from "../types";

/** Trace seconds that elapse per wall second at speed 1. */
export const BASE_RATE = 60;

export class AnimationPlayer {
  readonly durationTraceS: number;
  private positionTraceS = 0;

  constructor(
    readonly frames: AnimationFrame[],
    readonly frameStepS: number,
  ) {
    this.durationTraceS = Math.max(0, (frames.length - 1) * frameStepS);
  }

  /** Wall-clock seconds a full playback takes at the given speed. */
  wallDurationS(speed: number): number {
    return this.durationTraceS / (BASE_RATE * speed);
  }

  /** Advance by real elapsed time; returns the current frame index. */
  advance(wallDeltaS: number, speed: number): number {
    this.positionTraceS = Math.min(
      this.durationTraceS,
      this.positionTraceS + wallDeltaS * BASE_RATE * speed,
    );
    return this.frameIndex();
  }

  /** Jump straight to a frame (scrubbing). */
  seekFrame(index: number): number {
    const clamped = Math.max(0, Math.min(this.frames.length - 1, Math.round(index)));
    this.positionTraceS = clamped * this.frameStepS;
    return clamped;
  }

  seekFraction(fraction: number): number {
    this.positionTraceS = Math.max(0, Math.min(1, fraction)) * this.durationTraceS;
    return this.frameIndex();
  }

  frameIndex(): number {
    if (this.frames.length === 0) return 0;
    return Math.min(this.frames.length - 1, Math.floor(this.positionTraceS / this.frameStepS));
  }

  frame(): AnimationFrame | undefined {
    return this.frames[this.frameIndex()];
  }

  atEnd(): boolean {
    return this.positionTraceS >= this.durationTraceS;
  }

  rewind(): void {
    this.positionTraceS = 0;
  }
}
