// Thin client for the task service, with an offline retry queue for
// submissions: a network failure parks the request and a later flush
// delivers it unchanged.

import type {
  AssignmentBody,
  HitPayload,
  QualificationTest,
  SubmitOutcome,
} from "./types.js";

type FetchLike = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = globalThis.fetch?.bind(globalThis),
  ) {}

  private async getJson(path: string): Promise<any> {
    const res = await this.fetchFn(this.baseUrl + path);
    if (!res.ok) throw new Error(`GET ${path} failed: ${res.status}`);
    return res.json();
  }

  async nextHit(workerId: string): Promise<HitPayload | null> {
    const res = await this.fetchFn(
      `${this.baseUrl}/api/hits/next?worker_id=${encodeURIComponent(workerId)}`,
    );
    if (res.status === 403) throw new NotQualifiedError();
    if (!res.ok) throw new Error(`next hit failed: ${res.status}`);
    const body = await res.json();
    return body.hit ?? null;
  }

  async qualification(): Promise<QualificationTest> {
    return this.getJson("/api/qualification");
  }

  async submitQualification(workerId: string, answers: boolean[]): Promise<boolean> {
    const res = await this.fetchFn(`${this.baseUrl}/api/qualification`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ worker_id: workerId, answers }),
    });
    if (!res.ok) throw new Error(`qualification failed: ${res.status}`);
    const body = await res.json();
    return Boolean(body.passed);
  }

  async progress(): Promise<any> {
    return this.getJson("/api/progress");
  }

  /** Submit an assignment; distinguishes acceptance, conflict, validation. */
  async submitAssignment(hitId: string, body: AssignmentBody): Promise<SubmitOutcome> {
    const res = await this.fetchFn(
      `${this.baseUrl}/api/hits/${encodeURIComponent(hitId)}/assignments`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      },
    );
    if (res.ok) {
      const payload = await res.json();
      return { kind: "accepted", duplicate: payload.status === "duplicate" };
    }
    const detail = (await res.json().catch(() => ({})))?.detail ?? {};
    if (res.status === 409) {
      return { kind: "conflict", message: detail.error ?? "already submitted" };
    }
    return {
      kind: "invalid",
      message: detail.error ?? `submission rejected (${res.status})`,
      missing: (detail.missing ?? []).map((m: unknown) => String(m)),
    };
  }
}

export class NotQualifiedError extends Error {
  constructor() {
    super("worker has not passed qualification");
  }
}

interface QueuedSubmission {
  hitId: string;
  body: AssignmentBody;
}

/**
 * Wraps submissions so a network outage never loses answers: failures are
 * queued and retried; the caller is notified so it can show a notice.
 */
export class OfflineQueue {
  private pending: QueuedSubmission[] = [];

  constructor(
    private client: ApiClient,
    private onQueued: (size: number) => void = () => {},
    private onDelivered: (hitId: string, outcome: SubmitOutcome) => void = () => {},
  ) {}

  get size(): number {
    return this.pending.length;
  }

  async submit(hitId: string, body: AssignmentBody): Promise<SubmitOutcome> {
    try {
      return await this.client.submitAssignment(hitId, body);
    } catch {
      this.pending.push({ hitId, body });
      this.onQueued(this.pending.length);
      return { kind: "queued" };
    }
  }

  /** Retry everything queued, in order; stops at the first network failure. */
  async flush(): Promise<number> {
    let delivered = 0;
    while (this.pending.length > 0) {
      const next = this.pending[0] as QueuedSubmission;
      let outcome: SubmitOutcome;
      try {
        outcome = await this.client.submitAssignment(next.hitId, next.body);
      } catch {
        break; // still offline
      }
      this.pending.shift();
      delivered += 1;
      this.onDelivered(next.hitId, outcome);
    }
    return delivered;
  }
}
