// App shell: worker sign-in, qualification when the campaign requires it,
// then a fetch-answer-submit loop until no tasks remain.

import { ApiClient, NotQualifiedError, OfflineQueue } from "./api.js";
import { renderClusterHit } from "./cluster_view.js";
import { renderPairHit } from "./pair_view.js";
import type { AssignmentAnswers, HitPayload } from "./types.js";

const RETRY_INTERVAL_MS = 5000;

export class App {
  private client: ApiClient;
  private queue: OfflineQueue;
  private workerId = "";
  private root: HTMLElement;
  private notice: HTMLElement;

  constructor(root: HTMLElement, client = new ApiClient()) {
    this.client = client;
    this.root = root;
    this.notice = document.createElement("p");
    this.notice.className = "notice";
    this.queue = new OfflineQueue(
      client,
      (size) => this.say(`offline: ${size} submission(s) queued, retrying...`),
      () => this.say("queued submission delivered"),
    );
    setInterval(() => {
      void this.queue.flush().then((n) => {
        if (n > 0) void this.loadNext();
      });
    }, RETRY_INTERVAL_MS);
  }

  private say(text: string) {
    this.notice.textContent = text;
  }

  start() {
    this.root.innerHTML = "";
    const form = document.createElement("form");
    const input = document.createElement("input");
    input.placeholder = "worker id";
    const button = document.createElement("button");
    button.textContent = "Start";
    form.append(input, button);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      if (!input.value.trim()) return;
      this.workerId = input.value.trim();
      void this.loadNext();
    });
    this.root.append(form, this.notice);
  }

  private container(): HTMLElement {
    this.root.innerHTML = "";
    const view = document.createElement("div");
    this.root.append(this.notice, view);
    return view;
  }

  async loadNext(): Promise<void> {
    let hit: HitPayload | null;
    try {
      hit = await this.client.nextHit(this.workerId);
    } catch (error) {
      if (error instanceof NotQualifiedError) return this.runQualification();
      this.say("cannot reach the server, retrying soon");
      setTimeout(() => void this.loadNext(), RETRY_INTERVAL_MS);
      return;
    }
    if (!hit) {
      this.container().textContent = "No tasks left. Thank you!";
      return;
    }
    this.showHit(hit);
  }

  private showHit(hit: HitPayload) {
    const view = this.container();
    const submit = (answers: AssignmentAnswers, reason: string) =>
      void this.submit(hit.id, answers, reason);
    if (hit.kind === "pair") {
      renderPairHit(view, hit, submit);
    } else {
      renderClusterHit(view, hit, submit);
    }
  }

  private async submit(hitId: string, answers: AssignmentAnswers, reason: string) {
    const body = {
      worker_id: this.workerId,
      answers,
      ...(reason.trim() ? { reason: reason.trim() } : {}),
    };
    const outcome = await this.queue.submit(hitId, body);
    switch (outcome.kind) {
      case "accepted":
        this.say("");
        await this.loadNext();
        break;
      case "conflict":
        this.say("already answered elsewhere, moving on");
        await this.loadNext();
        break;
      case "invalid":
        this.say(`rejected: ${outcome.message} ${outcome.missing.join(", ")}`.trim());
        break;
      case "queued":
        break; // notice already shown; the flush timer will advance us
    }
  }

  private async runQualification() {
    const test = await this.client.qualification();
    if (!test.enabled) {
      this.container().textContent = "Not qualified and no test is available.";
      return;
    }
    const view = this.container();
    const heading = document.createElement("h2");
    heading.textContent = "Qualification: decide all three pairs correctly";
    view.appendChild(heading);
    const answers: (boolean | null)[] = test.pairs.map(() => null);
    const button = document.createElement("button");
    const refresh = () => {
      const left = answers.filter((a) => a === null).length;
      button.textContent = left === 0 ? "Submit" : `Submit (${left} left)`;
      button.disabled = left > 0;
    };
    test.pairs.forEach((pair, index) => {
      const card = document.createElement("section");
      card.className = "pair-card";
      const text = document.createElement("p");
      const describe = (r: { attributes: [string, string][] }) =>
        r.attributes.map(([, v]) => v).join(", ");
      text.textContent = `${describe(pair.a)}  vs  ${describe(pair.b)}`;
      card.appendChild(text);
      for (const [value, labelText] of [
        [true, "Same"],
        [false, "Different"],
      ] as const) {
        const label = document.createElement("label");
        const radio = document.createElement("input");
        radio.type = "radio";
        radio.name = `qual-${index}`;
        radio.addEventListener("change", () => {
          answers[index] = value;
          refresh();
        });
        label.append(radio, ` ${labelText}`);
        card.appendChild(label);
      }
      view.appendChild(card);
    });
    button.addEventListener("click", async () => {
      const passed = await this.client.submitQualification(
        this.workerId,
        answers.map(Boolean),
      );
      if (passed) {
        this.say("qualification passed");
        await this.loadNext();
      } else {
        this.say("qualification failed, try again");
        await this.runQualification();
      }
    });
    view.appendChild(button);
    refresh();
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  new App(document.getElementById("app") as HTMLElement).start();
}
