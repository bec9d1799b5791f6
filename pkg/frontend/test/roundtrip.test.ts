// Round trip against a mocked server: the labels a worker picks in the
// cluster view must post a partition that judgment extraction inverts
// losslessly (same label -> match judgment for every covered pair).

import { describe, expect, it, vi } from "vitest";

import { ApiClient, OfflineQueue } from "../src/api.js";
import { renderClusterHit } from "../src/cluster_view.js";
import { partitionOf } from "../src/gating.js";
import type { AssignmentBody, ClusterHitPayload } from "../src/types.js";

const record = (id: string, name: string) => ({
  id,
  attributes: [["name", name]] as [string, string][],
});

const HIT: ClusterHitPayload = {
  id: "hit-0001",
  kind: "cluster",
  records: [
    record("r1", "ipad two 16gb wifi white"),
    record("r2", "ipad 2nd generation 16gb wifi white"),
    record("r3", "iphone 4th generation white 16gb"),
    record("r7", "apple ipad2 16gb wifi white"),
  ],
  max_label: 4,
};

// the pairs this task verifies, as the backing task file records them
const COVERED: [string, string][] = [
  ["r1", "r2"],
  ["r1", "r7"],
  ["r2", "r3"],
  ["r2", "r7"],
];

/** Mirror of the backend's judgment extraction rule. */
function extractJudgments(labels: Record<string, number>) {
  return COVERED.map(([a, b]) => ({
    pair: [a, b] as [string, string],
    isMatch: labels[a] === labels[b],
  }));
}

function mockServer(capture: AssignmentBody[]) {
  return vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
    expect(String(url)).toBe("/api/hits/hit-0001/assignments");
    capture.push(JSON.parse(String(init?.body)) as AssignmentBody);
    return new Response(JSON.stringify({ status: "accepted" }), { status: 200 });
  }) as unknown as typeof fetch;
}

describe("label round trip", () => {
  it("posted labels invert to exactly the partition shown in the view", async () => {
    document.body.innerHTML = "<div id='view'></div>";
    const container = document.getElementById("view") as HTMLElement;
    const captured: AssignmentBody[] = [];
    const client = new ApiClient("", mockServer(captured));

    let posted: Promise<unknown> | null = null;
    const view = renderClusterHit(container, HIT, (answers) => {
      posted = client.submitAssignment(HIT.id, { worker_id: "w1", answers });
    });

    // the worker groups r1, r2, r7 and isolates r3
    view.setLabel("r1", 1);
    view.setLabel("r2", 1);
    view.setLabel("r7", 1);
    view.setLabel("r3", 2);
    view.submitButton.click();
    await posted;

    expect(captured).toHaveLength(1);
    const labels = captured[0]!.answers.labels!;

    // lossless inversion: judgments say match exactly for same-label pairs
    const judgments = extractJudgments(labels);
    for (const j of judgments) {
      const [a, b] = j.pair;
      expect(j.isMatch).toBe(labels[a] === labels[b]);
    }
    expect(judgments.filter((j) => j.isMatch).map((j) => j.pair)).toEqual([
      ["r1", "r2"],
      ["r1", "r7"],
      ["r2", "r7"],
    ]);

    // and the partition derived from the posted labels is the one chosen
    expect(partitionOf(labels)).toEqual([["r1", "r2", "r7"], ["r3"]]);
  });
});

describe("offline queue", () => {
  it("queues on network failure, notifies, and delivers unchanged on flush", async () => {
    const delivered: AssignmentBody[] = [];
    let online = false;
    const flaky = vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
      if (!online) throw new TypeError("network down");
      delivered.push(JSON.parse(String(init?.body)) as AssignmentBody);
      return new Response(JSON.stringify({ status: "accepted" }), { status: 200 });
    }) as unknown as typeof fetch;

    const notices: number[] = [];
    const queue = new OfflineQueue(new ApiClient("", flaky), (n) => notices.push(n));
    const body: AssignmentBody = {
      worker_id: "w1",
      answers: { labels: { r1: 1, r2: 1 } },
    };

    const outcome = await queue.submit("hit-0001", body);
    expect(outcome).toEqual({ kind: "queued" });
    expect(notices).toEqual([1]);
    expect(queue.size).toBe(1);

    expect(await queue.flush()).toBe(0); // still offline
    expect(queue.size).toBe(1);

    online = true;
    expect(await queue.flush()).toBe(1);
    expect(queue.size).toBe(0);
    expect(delivered).toEqual([body]);
  });

  it("reports conflicts distinctly so the app can advance", async () => {
    const conflictFetch = vi.fn(async () =>
      new Response(JSON.stringify({ detail: { error: "already answered" } }), {
        status: 409,
      }),
    ) as unknown as typeof fetch;
    const client = new ApiClient("", conflictFetch);
    const outcome = await client.submitAssignment("hit-0001", {
      worker_id: "w1",
      answers: { labels: { r1: 1 } },
    });
    expect(outcome.kind).toBe("conflict");
  });

  it("surfaces validation errors with the missing items", async () => {
    const invalidFetch = vi.fn(async () =>
      new Response(
        JSON.stringify({ detail: { error: "every record must be labeled", missing: ["r3"] } }),
        { status: 400 },
      ),
    ) as unknown as typeof fetch;
    const client = new ApiClient("", invalidFetch);
    const outcome = await client.submitAssignment("hit-0001", {
      worker_id: "w1",
      answers: { labels: { r1: 1 } },
    });
    expect(outcome).toEqual({
      kind: "invalid",
      message: "every record must be labeled",
      missing: ["r3"],
    });
  });
});
