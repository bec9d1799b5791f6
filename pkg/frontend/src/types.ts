// Wire types for the task service API.

export interface RecordPayload {
  id: string;
  attributes: [string, string][];
}

export interface PairItem {
  a: RecordPayload;
  b: RecordPayload;
}

export interface PairHitPayload {
  id: string;
  kind: "pair";
  pairs: PairItem[];
}

export interface ClusterHitPayload {
  id: string;
  kind: "cluster";
  records: RecordPayload[];
  max_label: number;
}

export type HitPayload = PairHitPayload | ClusterHitPayload;

export type PairAnswerRow = [string, string, boolean];

export interface AssignmentAnswers {
  pairs?: PairAnswerRow[];
  labels?: Record<string, number>;
}

export interface AssignmentBody {
  worker_id: string;
  answers: AssignmentAnswers;
  reason?: string;
}

export interface QualificationTest {
  enabled: boolean;
  pairs: { a: RecordPayload; b: RecordPayload }[];
}

export type SubmitOutcome =
  | { kind: "accepted"; duplicate: boolean }
  | { kind: "conflict"; message: string }
  | { kind: "invalid"; message: string; missing: string[] }
  | { kind: "queued" };
