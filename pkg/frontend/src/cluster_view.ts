// Cluster task table: label duplicates with the same number (rows recolor to
// match), sort by clicking a column header, drag rows to regroup them.
// Row order is presentation only; only the labels are submitted.

import {
  attributeColumns,
  attributeValue,
  canSubmit,
  compareValues,
  encodeLabels,
  labelColor,
  remainingLabels,
  submitCaption,
  type LabelChoices,
} from "./gating.js";
import type { AssignmentAnswers, ClusterHitPayload, RecordPayload } from "./types.js";

export interface ClusterViewHandle {
  labels: LabelChoices;
  submitButton: HTMLButtonElement;
  setLabel(recordId: string, label: number): void;
  sortBy(column: string): void;
  rowOrder(): string[];
  moveRow(fromIndex: number, toIndex: number): void;
}

export function renderClusterHit(
  container: HTMLElement,
  payload: ClusterHitPayload,
  onSubmit: (answers: AssignmentAnswers, reason: string) => void,
): ClusterViewHandle {
  container.innerHTML = "";
  const labels: LabelChoices = new Map(payload.records.map((r) => [r.id, null]));
  const columns = attributeColumns(payload.records);
  let order: RecordPayload[] = [...payload.records];
  let sortState: { column: string; ascending: boolean } | null = null;

  const heading = document.createElement("h2");
  heading.textContent = "Find duplicate products in the table";
  container.appendChild(heading);

  const tips = document.createElement("p");
  tips.className = "tips";
  tips.textContent =
    "Tips: give duplicate records the same label; sort the table by " +
    "clicking headers; move a row by dragging and dropping it.";
  container.appendChild(tips);

  const table = document.createElement("table");
  table.className = "cluster";
  container.appendChild(table);

  const reasonBox = document.createElement("textarea");
  reasonBox.className = "reason";
  reasonBox.placeholder = "Reasons for your answers (optional)";

  const submitButton = document.createElement("button");
  submitButton.className = "submit";

  const refreshGate = () => {
    const left = remainingLabels(labels);
    submitButton.textContent = submitCaption(left);
    submitButton.disabled = !canSubmit(left);
  };

  const renderTable = () => {
    table.innerHTML = "";
    const head = table.insertRow();
    const labelHeader = document.createElement("th");
    labelHeader.textContent = "Label";
    head.appendChild(labelHeader);
    for (const column of columns) {
      const th = document.createElement("th");
      th.className = "sortable";
      let marker = "";
      if (sortState && sortState.column === column) {
        marker = sortState.ascending ? " ▲" : " ▼";
      }
      th.textContent = column + marker;
      th.addEventListener("click", () => sortBy(column));
      head.appendChild(th);
    }

    order.forEach((record, index) => {
      const row = table.insertRow();
      row.draggable = true;
      row.dataset.recordId = record.id;
      const current = labels.get(record.id) ?? null;
      if (current !== null) row.style.backgroundColor = labelColor(current);

      row.addEventListener("dragstart", (event) => {
        event.dataTransfer?.setData("text/plain", String(index));
      });
      row.addEventListener("dragover", (event) => event.preventDefault());
      row.addEventListener("drop", (event) => {
        event.preventDefault();
        const from = Number(event.dataTransfer?.getData("text/plain"));
        if (Number.isInteger(from)) moveRow(from, index);
      });

      const labelCell = row.insertCell();
      const select = document.createElement("select");
      const blank = document.createElement("option");
      blank.value = "";
      blank.textContent = "";
      select.appendChild(blank);
      for (let value = 1; value <= payload.max_label; value += 1) {
        const option = document.createElement("option");
        option.value = String(value);
        option.textContent = String(value);
        select.appendChild(option);
      }
      if (current !== null) select.value = String(current);
      select.addEventListener("change", () => {
        labels.set(record.id, select.value === "" ? null : Number(select.value));
        renderTable();
        refreshGate();
      });
      labelCell.appendChild(select);

      for (const column of columns) {
        row.insertCell().textContent = attributeValue(record, column);
      }
    });
  };

  const sortBy = (column: string) => {
    const ascending = sortState?.column === column ? !sortState.ascending : true;
    sortState = { column, ascending };
    order = [...order].sort(
      (x, y) =>
        compareValues(attributeValue(x, column), attributeValue(y, column)) *
        (ascending ? 1 : -1),
    );
    renderTable();
  };

  const moveRow = (fromIndex: number, toIndex: number) => {
    if (fromIndex === toIndex || fromIndex < 0 || fromIndex >= order.length) return;
    const [moved] = order.splice(fromIndex, 1);
    if (!moved) return;
    order.splice(toIndex, 0, moved);
    sortState = null; // manual order replaces the sort
    renderTable();
  };

  submitButton.addEventListener("click", () => {
    if (!canSubmit(remainingLabels(labels))) return;
    onSubmit({ labels: encodeLabels(labels) }, reasonBox.value);
  });

  container.appendChild(reasonBox);
  container.appendChild(submitButton);
  renderTable();
  refreshGate();

  return {
    labels,
    submitButton,
    setLabel(recordId: string, label: number) {
      const row = table.querySelector<HTMLTableRowElement>(
        `tr[data-record-id="${recordId}"]`,
      );
      const select = row?.querySelector("select");
      if (!select) throw new Error(`no row for record ${recordId}`);
      select.value = String(label);
      select.dispatchEvent(new Event("change"));
    },
    sortBy,
    rowOrder: () => order.map((r) => r.id),
    moveRow,
  };
}
