// Trial view: fetches trials, draws bundles, forwards clicks, and displays
// exactly the state the server reports. Completion/timeout lock the input;
// any key press then requests the next trial.

import { ApiClient } from "./client.js";
import { applyHighlight, renderBundle, type RenderedBundle } from "./render.js";
import type { ClickResponse, NextTrialResponse } from "./types.js";

export interface ViewElements {
  stage: HTMLElement;
  banner: HTMLElement;
  clock: HTMLElement;
}

export class TrialView {
  private api: ApiClient;
  private els: ViewElements;
  private participant: string;
  private trial: NextTrialResponse | null = null;
  private rendered: RenderedBundle | null = null;
  private locked = false;
  private awaitingKey = false;
  private startedAt = 0;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(api: ApiClient, els: ViewElements, participant: string) {
    this.api = api;
    this.els = els;
    this.participant = participant;
  }

  async loadTrial(): Promise<void> {
    let trial: NextTrialResponse;
    try {
      trial = await this.api.nextTrial(this.participant);
    } catch (err) {
      this.banner(`error: ${(err as Error).message}`);
      return;
    }
    if (trial.done) {
      this.banner("all trials finished - thank you");
      this.els.stage.replaceChildren();
      this.trial = null;
      return;
    }
    try {
      this.rendered = renderBundle(this.els.stage, trial.bundle, (el) => {
        void this.forwardClick(el);
      });
    } catch (err) {
      // Malformed bundles must not leave a partial drawing behind.
      this.els.stage.replaceChildren();
      this.rendered = null;
      this.banner(`error: ${(err as Error).message}`);
      return;
    }
    this.trial = trial;
    this.locked = false;
    this.awaitingKey = false;
    this.startedAt = Date.now();
    applyHighlight(this.rendered, trial.highlight);
    this.banner(
      `${trial.practice ? "practice - " : ""}trial ${trial.index + 1} - ` +
        `find a path from the marked source to the marked destination`,
    );
    this.startClock();
  }

  async forwardClick(element: string): Promise<void> {
    if (!this.trial || this.locked || !this.rendered) {
      return;
    }
    const response = await this.api.click(this.trial.trialId, element);
    if ("error" in response) {
      if (response.error === "TimedOut") {
        this.finish("time is up - press any key for the next graph");
      } else {
        this.banner(`error: ${response.error}`);
      }
      return;
    }
    this.paint(response);
  }

  /** Repaint from a server response; display never deviates from it. */
  paint(response: ClickResponse): void {
    if (!this.rendered) {
      return;
    }
    applyHighlight(this.rendered, response.highlight);
    if (response.status === "completed") {
      const seconds = (response.elapsedMs / 1000).toFixed(1);
      this.finish(`path found in ${seconds} s - press any key for the next graph`);
    } else if (response.status === "timed-out") {
      this.finish("time is up - press any key for the next graph");
    }
  }

  handleKey(): void {
    if (this.awaitingKey) {
      this.awaitingKey = false;
      void this.loadTrial();
    }
  }

  toggleFullscreen(): void {
    if (document.fullscreenElement) {
      void document.exitFullscreen();
    } else {
      void document.documentElement.requestFullscreen();
    }
  }

  private finish(message: string): void {
    this.locked = true;
    this.awaitingKey = true;
    this.stopClock();
    this.banner(message);
  }

  private banner(message: string): void {
    this.els.banner.textContent = message;
  }

  private startClock(): void {
    this.stopClock();
    this.els.clock.textContent = "0.0 s";
    this.timer = setInterval(() => {
      const seconds = (Date.now() - this.startedAt) / 1000;
      this.els.clock.textContent = `${seconds.toFixed(1)} s`;
    }, 100);
  }

  private stopClock(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}

export function mount(root: Document = document): TrialView {
  const params = new URLSearchParams(root.defaultView?.location.search ?? "");
  const participant = params.get("participant") ?? "p00";
  const view = new TrialView(
    new ApiClient(),
    {
      stage: root.getElementById("stage") as HTMLElement,
      banner: root.getElementById("banner") as HTMLElement,
      clock: root.getElementById("clock") as HTMLElement,
    },
    participant,
  );
  root.addEventListener("keydown", () => view.handleKey());
  root.getElementById("fullscreen")?.addEventListener("click", () => view.toggleFullscreen());
  void view.loadTrial();
  return view;
}
