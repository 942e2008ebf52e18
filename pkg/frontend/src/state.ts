// Session-local state: append-only history plus a sequence gate that drops
// responses superseded by a newer submission.

import type { HistoryEntry, PredictResponse } from "./types.js";

export class SessionHistory {
  private entries: HistoryEntry[] = [];

  append(text: string, modelId: string, response: PredictResponse): HistoryEntry {
    const entry = { text, modelId, response };
    this.entries.push(entry);
    return entry;
  }

  /** Display order: most recent submission first. */
  newestFirst(): HistoryEntry[] {
    return [...this.entries].reverse();
  }

  get size(): number {
    return this.entries.length;
  }
}

export class SequenceGate {
  private latest = 0;

  /** Claim a sequence number for a new in-flight request. */
  next(): number {
    return ++this.latest;
  }

  /** A response may only be applied if no newer request was issued since. */
  isCurrent(seq: number): boolean {
    return seq === this.latest;
  }
}
