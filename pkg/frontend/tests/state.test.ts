import { describe, expect, test } from "vitest";

import type { InstanceView, PendingView } from "../src/api.js";
import { SessionState, answerFromLabels } from "../src/state.js";

function instance(id: number): InstanceView {
  return { id, features: [id, id], xy: [id, id] };
}

function awaiting(seq: number, aId: number, bId: number): PendingView {
  return {
    state: "awaiting_answer",
    seq,
    a: instance(aId),
    b: instance(bId),
    progress: { n_clusters: 25, oracle_count: seq },
  };
}

function startedState(): SessionState {
  const state = new SessionState();
  state.started("abc123");
  return state;
}

describe("SessionState", () => {
  test("pending question becomes claimable exactly once", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 3, 9));
    expect(state.phase).toBe("question");
    expect(state.question?.a.id).toBe(3);

    expect(state.claimAnswer()).toBe(0);
    // the double click: same button, same question, immediately after
    expect(state.claimAnswer()).toBeNull();
    expect(state.phase).toBe("submitting");
  });

  test("poll racing an in-flight answer does not resurface the question", () => {
    const state = startedState();
    state.sawPending(awaiting(2, 1, 4));
    expect(state.claimAnswer()).toBe(2);
    // server has not consumed the answer yet, poller sees the same seq
    state.sawPending(awaiting(2, 1, 4));
    expect(state.phase).toBe("submitting");
    expect(state.question).toBeNull();
    expect(state.claimAnswer()).toBeNull();
  });

  test("next seq is claimable after the previous answer lands", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 1, 2));
    expect(state.claimAnswer()).toBe(0);
    state.sawPending(awaiting(1, 5, 6));
    expect(state.phase).toBe("question");
    expect(state.claimAnswer()).toBe(1);
  });

  test("rejected submission frees the seq for another try", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 1, 2));
    expect(state.claimAnswer()).toBe(0);
    state.submissionRejected(0);
    state.sawPending(awaiting(0, 1, 2));
    expect(state.claimAnswer()).toBe(0);
  });

  test("completion carries the summary and clears the question", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 1, 2));
    const changed = state.sawPending({
      state: "completed",
      progress: { n_clusters: 3, oracle_count: 31 },
      summary: { oracle_count: 31, n_clusters_found: 3 },
    });
    expect(changed).toBe(true);
    expect(state.phase).toBe("completed");
    expect(state.question).toBeNull();
    expect(state.summary?.n_clusters_found).toBe(3);
  });

  test("unchanged poll reports no change", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 1, 2));
    expect(state.sawPending(awaiting(0, 1, 2))).toBe(false);
  });

  test("claim is invalid before any question and after cancel", () => {
    const state = startedState();
    expect(state.claimAnswer()).toBeNull();
    state.sawPending(awaiting(0, 1, 2));
    state.cancelled();
    expect(state.claimAnswer()).toBeNull();
  });

  test("starting a new session resets submitted seqs", () => {
    const state = startedState();
    state.sawPending(awaiting(0, 1, 2));
    expect(state.claimAnswer()).toBe(0);
    state.started("next");
    state.sawPending(awaiting(0, 1, 2));
    expect(state.claimAnswer()).toBe(0);
  });
});

describe("answerFromLabels", () => {
  test("same label must-link, different cannot-link", () => {
    const labelOf = (id: number) => (id < 5 ? "x" : "y");
    expect(answerFromLabels(labelOf, 1, 4)).toBe("must-link");
    expect(answerFromLabels(labelOf, 1, 7)).toBe("cannot-link");
  });
});
