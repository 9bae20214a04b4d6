/** Step-wise replay of transition lists with adjustable speed. */

import type { TransitionJson } from "./types.js";

export type Sleeper = (ms: number) => Promise<void>;

const defaultSleeper: Sleeper = (ms) =>
  new Promise((resolve) => setTimeout(resolve, ms));

export class Replayer {
  private delayMs: number;

  constructor(
    private readonly renderStep: (transition: TransitionJson) => void,
    delayMs = 600,
    private readonly sleep: Sleeper = defaultSleeper,
  ) {
    this.delayMs = delayMs;
  }

  /** Speed control: 1 = normal, 2 = twice as fast, 0 disables delays. */
  setSpeed(factor: number): void {
    this.delayMs = factor <= 0 ? 0 : Math.round(600 / factor);
  }

  get delay(): number {
    return this.delayMs;
  }

  async play(transitions: TransitionJson[]): Promise<void> {
    for (const transition of transitions) {
      this.renderStep(transition);
      if (this.delayMs > 0) {
        await this.sleep(this.delayMs);
      }
    }
  }
}
