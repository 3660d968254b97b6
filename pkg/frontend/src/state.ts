/** Client-side session state, independent of the DOM and the network.
 *
 * The one rule that matters: each question (identified by its seq) gets at
 * most one submission attempt from this client, no matter how fast the
 * buttons are clicked or how polling interleaves.  The server enforces the
 * same rule, but a well-behaved client should never rely on the 409.
 */

import type { Answer, InstanceView, PendingView } from "./api.js";

export type Phase =
  | "idle"
  | "starting"
  | "waiting"
  | "question"
  | "submitting"
  | "completed"
  | "cancelled";

export interface QuestionCard {
  seq: number;
  a: InstanceView;
  b: InstanceView;
}

export class SessionState {
  phase: Phase = "idle";
  sessionId: string | null = null;
  question: QuestionCard | null = null;
  oracleCount = 0;
  nClusters: number | null = null;
  summary: { oracle_count: number; n_clusters_found: number } | null = null;
  private submitted = new Set<number>();

  started(sessionId: string): void {
    this.sessionId = sessionId;
    this.phase = "waiting";
    this.question = null;
    this.summary = null;
    this.oracleCount = 0;
    this.nClusters = null;
    this.submitted.clear();
  }

  /** Fold in one poll response; returns true when the view changed. */
  sawPending(view: PendingView): boolean {
    const before = this.snapshot();
    this.oracleCount = view.progress.oracle_count;
    this.nClusters = view.progress.n_clusters;
    if (view.state === "completed") {
      this.phase = "completed";
      this.question = null;
      this.summary = view.summary ?? null;
    } else if (view.state === "cancelled") {
      this.phase = "cancelled";
      this.question = null;
    } else if (
      view.state === "awaiting_answer" &&
      view.seq !== undefined &&
      view.a !== undefined &&
      view.b !== undefined
    ) {
      if (this.submitted.has(view.seq)) {
        // our answer is in flight; the poller just raced it
        this.phase = "submitting";
      } else {
        this.phase = "question";
        this.question = { seq: view.seq, a: view.a, b: view.b };
      }
    } else {
      this.phase = "waiting";
      this.question = null;
    }
    return this.snapshot() !== before;
  }

  /**
   * Claim the current question for submission.  Returns the seq to send,
   * or null if there is nothing to answer or it was already claimed (the
   * double-click case).
   */
  claimAnswer(): number | null {
    if (this.phase !== "question" || this.question === null) {
      return null;
    }
    const seq = this.question.seq;
    if (this.submitted.has(seq)) {
      return null;
    }
    this.submitted.add(seq);
    this.phase = "submitting";
    this.question = null;
    return seq;
  }

  /** A submission was rejected as stale; drop the claim so polling recovers. */
  submissionRejected(seq: number): void {
    this.submitted.delete(seq);
    if (this.phase === "submitting") {
      this.phase = "waiting";
    }
  }

  cancelled(): void {
    this.phase = "cancelled";
    this.question = null;
  }

  private snapshot(): string {
    return JSON.stringify([
      this.phase,
      this.question,
      this.oracleCount,
      this.nClusters,
      this.summary,
    ]);
  }
}

/** Ground-truth answering used by the scripted client in tests. */
export function answerFromLabels(
  labelOf: (id: number) => string,
  aId: number,
  bId: number,
): Answer {
  return labelOf(aId) === labelOf(bId) ? "must-link" : "cannot-link";
}
