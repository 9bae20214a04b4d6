/** Application wiring: session lifecycle, action submission, hints.
 *
 * The session id lives in the URL (?session=...); there is no other
 * client-side persistence. At most one mutation request is in flight at
 * a time — the form is disabled while one is pending.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  renderActionForm,
  renderAnalysis,
  showBugBanner,
  showError,
} from "./panels.js";
import { Replayer } from "./replay.js";
import type {
  ActionJson,
  Color,
  SessionView,
  StateJson,
  TransitionJson,
} from "./types.js";
import { actionLabel, sameAction } from "./types.js";
import { renderBoard } from "./view.js";

export const DEFAULT_START: StateJson = {
  board: ["_", "_", "_"],
  blue: { guards: 2, prisoners: 1 },
  red: { guards: 1, prisoners: 1 },
  active: "b",
  phase: { kind: "turn_start" },
  winner: null,
};

export interface AppElements {
  board: HTMLElement;
  form: HTMLElement;
  analysis: HTMLElement;
  hint: HTMLElement;
  messages: HTMLElement;
}

export class GameApp {
  private view: SessionView | null = null;
  private pending = false;
  readonly replayer: Replayer;

  constructor(
    private readonly client: ApiClient,
    private readonly elements: AppElements,
    replayer?: Replayer,
  ) {
    this.replayer =
      replayer ??
      new Replayer((transition: TransitionJson) =>
        renderBoard(this.elements.board, transition.state),
      );
  }

  get sessionId(): string | null {
    return this.view?.session_id ?? null;
  }

  get state(): StateJson | null {
    return this.view?.state ?? null;
  }

  async start(sessionId: string | null, human: Color = "b"): Promise<void> {
    this.view = sessionId
      ? await this.client.getSession(sessionId)
      : await this.client.createSession(DEFAULT_START, human);
    if (this.view.transitions?.length) {
      await this.replayer.play(this.view.transitions);
    }
    this.render();
  }

  private render(): void {
    if (!this.view) {
      return;
    }
    renderBoard(this.elements.board, this.view.state);
    renderAnalysis(this.elements.analysis, this.view.analysis);
    const handle = renderActionForm(
      this.elements.form,
      this.view.legal_actions,
      (action) => void this.submit(action),
    );
    handle.setPending(this.pending);
  }

  async submit(action: ActionJson): Promise<void> {
    if (this.pending || !this.view) {
      return;
    }
    const listed = this.view.legal_actions.some((a) => sameAction(a, action));
    if (!listed) {
      showError(this.elements.messages, "that action is not currently legal");
      return;
    }
    this.pending = true;
    this.render();
    try {
      const updated = await this.client.submitAction(
        this.view.session_id,
        action,
      );
      this.view = updated;
      if (updated.transitions?.length) {
        await this.replayer.play(updated.transitions);
      }
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // the server listed this action and then rejected it
        showBugBanner(
          this.elements.messages,
          `server rejected a listed action (${error.message})`,
        );
        this.view = await this.client.getSession(this.view.session_id);
      } else {
        showError(this.elements.messages, String(error));
      }
    } finally {
      this.pending = false;
      this.render();
    }
  }

  async showHint(): Promise<void> {
    if (!this.view) {
      return;
    }
    const hint = await this.client.getHint(this.view.session_id);
    this.elements.hint.textContent =
      hint.action !== null
        ? `suggested: ${actionLabel(hint.action)}`
        : `no hint: ${hint.reason ?? "unavailable"}`;
  }
}

export function sessionIdFromUrl(search: string): string | null {
  return new URLSearchParams(search).get("session");
}

export function urlWithSession(base: string, sessionId: string): string {
  const url = new URL(base);
  url.searchParams.set("session", sessionId);
  return url.toString();
}

export async function boot(doc: Document, win: Window): Promise<GameApp> {
  const byId = (id: string): HTMLElement => {
    const node = doc.getElementById(id);
    if (!node) {
      throw new Error(`missing #${id}`);
    }
    return node;
  };
  const elements: AppElements = {
    board: byId("board"),
    form: byId("actions"),
    analysis: byId("analysis"),
    hint: byId("hint-output"),
    messages: byId("messages"),
  };
  const app = new GameApp(new ApiClient(""), elements);
  byId("hint-button").addEventListener("click", () => void app.showHint());
  const speed = byId("speed") as HTMLInputElement;
  speed.addEventListener("input", () =>
    app.replayer.setSpeed(Number(speed.value)),
  );
  await app.start(sessionIdFromUrl(win.location.search));
  if (app.sessionId && !win.location.search.includes(app.sessionId)) {
    win.history.replaceState(
      null,
      "",
      urlWithSession(win.location.href, app.sessionId),
    );
  }
  return app;
}
