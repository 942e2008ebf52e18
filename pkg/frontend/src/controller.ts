// Submission orchestration shared by the page and the tests: sequence-gated,
// cancellable, history-appending. Returns what the page should render so the
// DOM layer stays a thin shell.

import { ApiError, ServiceClient } from "./api.js";
import { SequenceGate, SessionHistory } from "./state.js";
import type { PanelResult } from "./render.js";
import type { HistoryEntry } from "./types.js";

export type SubmitOutcome =
  | { kind: "applied"; entry: HistoryEntry }
  | { kind: "stale" }
  | { kind: "error"; message: string };

export class PlaygroundController {
  readonly history = new SessionHistory();
  private gate = new SequenceGate();
  private inflight: AbortController | null = null;

  constructor(readonly client: ServiceClient) {}

  /** POST one text; stale responses (superseded submissions) are discarded. */
  async submitText(text: string, modelId: string): Promise<SubmitOutcome> {
    const seq = this.gate.next();
    this.inflight?.abort();
    this.inflight = new AbortController();
    try {
      const response = await this.client.predict(text, modelId, this.inflight.signal);
      if (!this.gate.isCurrent(seq)) return { kind: "stale" };
      return { kind: "applied", entry: this.history.append(text, modelId, response) };
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return { kind: "stale" };
      if (!this.gate.isCurrent(seq)) return { kind: "stale" };
      const message = err instanceof ApiError ? err.message : `service unreachable: ${String(err)}`;
      return { kind: "error", message };
    }
  }

  /** One /predict per model; partial failures become per-panel errors. */
  async compareModels(text: string, modelIds: string[]): Promise<PanelResult[]> {
    const settled = await Promise.allSettled(
      modelIds.map((id) => this.client.predict(text, id))
    );
    return settled.map((outcome, i) =>
      outcome.status === "fulfilled"
        ? { modelId: modelIds[i], response: outcome.value }
        : { modelId: modelIds[i], error: String(outcome.reason?.message ?? outcome.reason) }
    );
  }
}
