// Thin API wrapper. At most one click request is in flight; later clicks
// queue in arrival order so the server sees them in sequence.

import type { ApiError, ClickResponse, NextTrialResponse } from "./types.js";

export class ApiClient {
  private base: string;
  private pending: Promise<unknown> = Promise.resolve();

  constructor(base = "") {
    this.base = base.replace(/\/$/, "");
  }

  async nextTrial(participant: string): Promise<NextTrialResponse> {
    const response = await fetch(`${this.base}/api/participants/${participant}/next`);
    const body = (await response.json()) as NextTrialResponse | ApiError;
    if ("error" in body) {
      throw new Error(body.error);
    }
    return body;
  }

  /** POST a click; resolves in order even when clicks arrive fast. */
  click(trialId: string, element: string): Promise<ClickResponse | ApiError> {
    const run = async (): Promise<ClickResponse | ApiError> => {
      const response = await fetch(`${this.base}/api/trials/${trialId}/click`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ element, clientTs: Date.now() / 1000 }),
      });
      return (await response.json()) as ClickResponse | ApiError;
    };
    const result = this.pending.then(run, run);
    this.pending = result.then(
      () => undefined,
      () => undefined,
    );
    return result;
  }

  async abandon(trialId: string): Promise<void> {
    await fetch(`${this.base}/api/trials/${trialId}/abandon`, { method: "POST" });
  }
}
